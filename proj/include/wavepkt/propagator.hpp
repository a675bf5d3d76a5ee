#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "wavepkt/errors.hpp"
#include "wavepkt/gaussian.hpp"
#include "wavepkt/units.hpp"

namespace wavepkt {

/// Uniform periodic grid x_j = x_min + j dx, j = 0..n-1, dx = (x_max - x_min)/n.
template <typename Scalar>
struct Grid {
  Scalar x_min{-10};
  Scalar x_max{10};
  Eigen::Index n{1024};

  Scalar length() const { return x_max - x_min; }
  Scalar dx() const { return length() / static_cast<Scalar>(n); }
  Scalar x(Eigen::Index j) const { return x_min + static_cast<Scalar>(j) * dx(); }

  Eigen::Array<Scalar, Eigen::Dynamic, 1> points() const {
    Eigen::Array<Scalar, Eigen::Dynamic, 1> xs(n);
    for (Eigen::Index j = 0; j < n; ++j) xs[j] = x(j);
    return xs;
  }

  /// Angular wavenumbers in FFT order.
  Eigen::Array<Scalar, Eigen::Dynamic, 1> wavenumbers() const {
    Eigen::Array<Scalar, Eigen::Dynamic, 1> k(n);
    const Scalar dk = 2 * std::numbers::pi_v<Scalar> / length();
    for (Eigen::Index j = 0; j < n; ++j)
      k[j] = dk * static_cast<Scalar>(j < n / 2 ? j : j - n);
    return k;
  }
};

inline bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

template <typename Scalar>
void validate(const Grid<Scalar>& g, bool spectral = false) {
  using std::isfinite;
  if (!isfinite(g.x_min) || !isfinite(g.x_max) || !(g.x_max > g.x_min))
    throw DomainError("grid requires finite x_max > x_min");
  if (g.n < 16) throw DomainError("grid requires at least 16 points");
  if (spectral && !is_power_of_two(g.n))
    throw DomainError("spectral propagation requires a power-of-two grid");
}

template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

/// Complex wavefunction samples on a grid.
template <typename Scalar>
struct WaveField {
  Grid<Scalar> grid;
  ComplexVector<Scalar> values;

  /// Trapezoidal norm; the grid is periodic so every sample has weight dx.
  Scalar norm() const { return values.squaredNorm() * grid.dx(); }

  Eigen::Array<Scalar, Eigen::Dynamic, 1> density() const { return values.array().abs2(); }
};

/// Periodic trapezoidal integral of samples taken on `grid`.
template <typename Scalar, typename Derived>
Scalar integrate(const Grid<Scalar>& grid, const Eigen::ArrayBase<Derived>& samples) {
  return samples.sum() * grid.dx();
}

/// Mass of a Gaussian density N(center, var) outside [lo, hi].
template <typename Scalar>
Scalar gaussian_mass_outside(Scalar center, Scalar var, Scalar lo, Scalar hi) {
  using std::erfc;
  using std::sqrt;
  const Scalar s = sqrt(2 * var);
  return (erfc((center - lo) / s) + erfc((hi - center) / s)) / 2;
}

/// Samples the t = 0 packet and renormalizes it on the grid.
template <typename Scalar>
WaveField<Scalar> sample_initial(const GaussianPacket<Scalar>& packet, const Grid<Scalar>& grid,
                                 const Constants<Scalar>& c) {
  validate(packet);
  validate(grid);
  const Scalar reach = 8 * packet.sigma;
  if (grid.x_min > packet.x0 - reach || grid.x(grid.n - 1) < packet.x0 + reach) {
    const Scalar lost = gaussian_mass_outside(packet.x0, packet.sigma * packet.sigma, grid.x_min,
                                              grid.x(grid.n - 1));
    throw TruncationError("grid does not span +/-8 sigma around x0; lost mass " +
                              std::to_string(static_cast<double>(lost)),
                          static_cast<double>(lost));
  }
  WaveField<Scalar> field{grid, ComplexVector<Scalar>(grid.n)};
  for (Eigen::Index j = 0; j < grid.n; ++j)
    field.values[j] = wavefunction(packet, grid.x(j), Scalar(0), c);
  field.values /= std::sqrt(field.norm());
  return field;
}

namespace detail {

template <typename Scalar>
ComplexVector<Scalar> forward_fft(const ComplexVector<Scalar>& v) {
  Eigen::FFT<Scalar> fft;
  ComplexVector<Scalar> out(v.size());
  fft.fwd(out, v);
  return out;
}

template <typename Scalar>
ComplexVector<Scalar> inverse_fft(const ComplexVector<Scalar>& v) {
  Eigen::FFT<Scalar> fft;
  ComplexVector<Scalar> out(v.size());
  fft.inv(out, v);
  return out;
}

template <typename Scalar>
void require_normalized(const WaveField<Scalar>& f, Scalar tol) {
  using std::abs;
  const Scalar n = f.norm();
  if (!(abs(n - 1) <= tol))
    throw DomainError("field is not normalized (norm " + std::to_string(static_cast<double>(n)) +
                      ")");
}

}  // namespace detail

namespace detail {

template <typename Scalar>
Scalar high_mode_fraction(const Grid<Scalar>& grid, const ComplexVector<Scalar>& spec) {
  const auto k = grid.wavenumbers().abs();
  const Scalar cutoff = Scalar(0.9) * k.maxCoeff();
  const auto power = spec.array().abs2();
  return (k >= cutoff).select(power, Scalar(0)).sum() / power.sum();
}

}  // namespace detail

/// Fraction of spectral weight in the top 10% of |k| modes.
template <typename Scalar>
Scalar high_mode_fraction(const WaveField<Scalar>& field) {
  return detail::high_mode_fraction(field.grid, detail::forward_fft(field.values));
}

struct SpectralOptions {
  double norm_tolerance = 1e-8;
  double aliasing_limit = 1e-6;
};

/// Exact free evolution on a periodic grid: each momentum component is
/// multiplied by exp(-i hbar k^2 t / 2m). One step for any t.
template <typename Scalar>
WaveField<Scalar> propagate_spectral(const WaveField<Scalar>& field, Scalar mass, Scalar t,
                                     const Constants<Scalar>& c,
                                     const SpectralOptions& opts = {}) {
  validate(field.grid, true);
  detail::require_positive(mass, "mass");
  detail::require_normalized(field, static_cast<Scalar>(opts.norm_tolerance));

  ComplexVector<Scalar> spec = detail::forward_fft(field.values);
  const Scalar high = detail::high_mode_fraction(field.grid, spec);
  if (high > static_cast<Scalar>(opts.aliasing_limit))
    throw ResolutionError("spectral weight " + std::to_string(static_cast<double>(high)) +
                          " in the top 10% of momentum modes; refine the grid");

  const auto k = field.grid.wavenumbers();
  const Scalar w = c.hbar * t / (2 * mass);
  for (Eigen::Index j = 0; j < spec.size(); ++j)
    spec[j] *= std::polar(Scalar(1), -w * k[j] * k[j]);
  return {field.grid, detail::inverse_fft(spec)};
}

/// Direct quadrature of the free-particle propagator
///   psi(x, t) = sqrt(m / 2 pi i hbar t) * integral exp{i m (x - x')^2 / 2 hbar t} psi(x', 0) dx'
/// evaluated on the input grid. O(n^2).
template <typename Scalar>
WaveField<Scalar> propagate_kernel(const WaveField<Scalar>& field, Scalar mass, Scalar t,
                                   const Constants<Scalar>& c) {
  using std::abs;
  using cplx = std::complex<Scalar>;
  validate(field.grid);
  detail::require_positive(mass, "mass");
  if (t == Scalar(0)) throw SingularKernel("propagator kernel is singular at t = 0");
  const Scalar dx = field.grid.dx();
  if (!(dx * dx < c.hbar * abs(t) / (10 * mass)))
    throw ResolutionError("grid does not resolve kernel oscillation: need dx^2 < hbar|t|/10m");

  const Eigen::Index n = field.grid.n;
  // Principal root: phase e^{-i pi/4} for t > 0 and e^{+i pi/4} for t < 0.
  const cplx prefactor =
      std::sqrt(cplx(mass, 0) / (cplx(0, 2 * std::numbers::pi_v<Scalar> * c.hbar * t))) * dx;
  const Scalar chirp = mass * dx * dx / (2 * c.hbar * t);
  ComplexVector<Scalar> kernel(n);
  for (Eigen::Index d = 0; d < n; ++d) {
    const Scalar dd = static_cast<Scalar>(d);
    kernel[d] = std::polar(Scalar(1), chirp * dd * dd);
  }

  ComplexVector<Scalar> out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cplx acc(0, 0);
    for (Eigen::Index j = 0; j < n; ++j) acc += kernel[i > j ? i - j : j - i] * field.values[j];
    out[i] = prefactor * acc;
  }
  return {field.grid, out};
}

/// Quantum moments of a sampled state. Position moments use the trapezoidal
/// rule; momentum moments use the spectral derivative.
template <typename Scalar>
MomentSet<Scalar> moments_from_field(const WaveField<Scalar>& field, const Constants<Scalar>& c,
                                     Scalar norm_tolerance = Scalar(1e-8)) {
  using cplx = std::complex<Scalar>;
  validate(field.grid, true);
  detail::require_normalized(field, norm_tolerance);

  const Scalar dx = field.grid.dx();
  const auto xs = field.grid.points();
  auto k = field.grid.wavenumbers();
  const Eigen::Index n = field.grid.n;

  const ComplexVector<Scalar> spec = detail::forward_fft(field.values);
  const Scalar p2 = c.hbar * c.hbar * (k.square() * spec.array().abs2()).sum() * dx /
                    static_cast<Scalar>(n);

  // The Nyquist mode has no well-defined sign for an odd derivative.
  k[n / 2] = 0;
  ComplexVector<Scalar> dspec = spec;
  for (Eigen::Index j = 0; j < n; ++j) dspec[j] *= cplx(0, k[j]);
  const ComplexVector<Scalar> dpsi = detail::inverse_fft(dspec);

  const auto psi = field.values.array();
  const auto rho = psi.abs2();
  // p psi = -i hbar psi'
  const auto ppsi = cplx(0, -c.hbar) * dpsi.array();
  const auto conj_psi = psi.conjugate();

  MomentSet<Scalar> m;
  m.mean_x = (xs * rho).sum() * dx;
  m.mean_x2 = (xs.square() * rho).sum() * dx;
  m.mean_p = (conj_psi * ppsi).sum().real() * dx;
  m.mean_p2 = p2;
  m.mean_sym_xp = 2 * (conj_psi * xs.template cast<cplx>() * ppsi).sum().real() * dx;
  return m;
}

/// Chooses a grid of n points that carries `packet` from t = 0 to t = t_end.
///
/// The spatial window must contain both the initial and evolved packet with a
/// margin of `margin` widths, and the Nyquist wavenumber must exceed
/// |k0| + margin * dk. The margin is the largest value (capped at 12) for
/// which both fit in n points.
template <typename Scalar>
Grid<Scalar> auto_grid(const GaussianPacket<Scalar>& packet, Scalar t_end,
                       const Constants<Scalar>& c, Eigen::Index n = 4096) {
  using std::abs;
  using std::max;
  using std::min;
  using std::sqrt;
  validate(packet);
  const Scalar width_end = sqrt(packet_variance(packet, t_end, c));
  const Scalar center_end = packet.x0 + packet.v0 * t_end;
  const Scalar k0 = abs(packet.mass * packet.v0 / c.hbar);
  const Scalar dk = sqrt(1 + packet.squeeze * packet.squeeze) / (2 * packet.sigma);

  auto window = [&](Scalar r) {
    const Scalar lo = min(packet.x0 - r * packet.sigma, center_end - r * width_end);
    const Scalar hi = max(packet.x0 + r * packet.sigma, center_end + r * width_end);
    return std::pair{lo, hi};
  };
  auto fits = [&](Scalar r) {
    const auto [lo, hi] = window(r);
    return (hi - lo) * (k0 + r * dk) <= std::numbers::pi_v<Scalar> * static_cast<Scalar>(n);
  };

  constexpr Scalar max_margin = 12;
  constexpr Scalar min_margin = 7;
  Scalar margin = max_margin;
  if (!fits(margin)) {
    Scalar lo = 0, hi = max_margin;
    for (int i = 0; i < 100; ++i) {
      const Scalar mid = (lo + hi) / 2;
      (fits(mid) ? lo : hi) = mid;
    }
    margin = lo;
  }
  if (margin < min_margin)
    throw ResolutionError("n = " + std::to_string(n) +
                          " points cannot resolve this evolution in both position and momentum");
  const auto [lo, hi] = window(margin);
  return {lo, hi, n};
}

}  // namespace wavepkt
