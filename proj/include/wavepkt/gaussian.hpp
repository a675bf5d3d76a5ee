#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "wavepkt/errors.hpp"
#include "wavepkt/units.hpp"

namespace wavepkt {

/// A free-particle Gaussian state at t = 0.
///
/// The initial wavefunction is
///   (2 pi sigma^2)^(-1/4) exp{-(1 - iC)(x - x0)^2 / 4 sigma^2 + i m v0 x / hbar},
/// i.e. a minimum-uncertainty packet when squeeze == 0 and a squeezed packet
/// with quadratic phase C otherwise.
template <typename Scalar>
struct GaussianPacket {
  Scalar mass{1};
  Scalar sigma{1};    ///< initial rms width
  Scalar x0{0};       ///< initial center
  Scalar v0{0};       ///< group velocity
  Scalar squeeze{0};  ///< quadratic phase coefficient C
};

/// First and second moments of a state at one instant.
template <typename Scalar>
struct MomentSet {
  Scalar mean_x{0};
  Scalar mean_p{0};
  Scalar mean_x2{0};
  Scalar mean_p2{0};
  Scalar mean_sym_xp{0};  ///< <xp + px>

  Scalar var_x() const { return mean_x2 - mean_x * mean_x; }
  Scalar var_p() const { return mean_p2 - mean_p * mean_p; }
  /// Symmetrized covariance <xp + px>/2 - <x><p>.
  Scalar cov_xp() const { return mean_sym_xp / 2 - mean_x * mean_p; }
};

template <typename Scalar>
void validate(const GaussianPacket<Scalar>& p) {
  detail::require_positive(p.mass, "mass");
  detail::require_positive(p.sigma, "sigma");
  detail::require_finite(p.x0, "x0");
  detail::require_finite(p.v0, "v0");
  detail::require_finite(p.squeeze, "squeeze parameter");
}

template <typename Scalar>
MomentSet<Scalar> initial_moments(const GaussianPacket<Scalar>& p, const Constants<Scalar>& c) {
  validate(p);
  const Scalar mv = p.mass * p.v0;
  const Scalar s2 = p.sigma * p.sigma;
  return {
      p.x0,
      mv,
      p.x0 * p.x0 + s2,
      mv * mv + c.hbar * c.hbar * (1 + p.squeeze * p.squeeze) / (4 * s2),
      2 * p.x0 * mv + c.hbar * p.squeeze,
  };
}

/// Exact free evolution of the moment hierarchy; t may be negative.
template <typename Scalar>
MomentSet<Scalar> evolve_moments(const MomentSet<Scalar>& m0, Scalar mass, Scalar t) {
  detail::require_positive(mass, "mass");
  const Scalar tm = t / mass;
  MomentSet<Scalar> m = m0;
  m.mean_x = m0.mean_x + m0.mean_p * tm;
  m.mean_x2 = m0.mean_x2 + m0.mean_sym_xp * tm + m0.mean_p2 * tm * tm;
  m.mean_sym_xp = m0.mean_sym_xp + 2 * m0.mean_p2 * tm;
  return m;
}

/// Position variance at time t from the initial variances and covariance.
template <typename Scalar>
Scalar variance_x_at(const MomentSet<Scalar>& m0, Scalar mass, Scalar t) {
  detail::require_positive(mass, "mass");
  const Scalar tm = t / mass;
  return m0.var_x() + m0.var_p() * tm * tm + 2 * m0.cov_xp() * tm;
}

/// Closed-form width of a (possibly squeezed) packet:
///   sigma^2 (1 + C hbar t / 2 m sigma^2)^2 + (hbar t / 2 m sigma)^2.
template <typename Scalar>
Scalar packet_variance(const GaussianPacket<Scalar>& p, Scalar t, const Constants<Scalar>& c) {
  validate(p);
  const Scalar tau = c.hbar * t / (2 * p.mass * p.sigma * p.sigma);
  const Scalar a = 1 + p.squeeze * tau;
  return p.sigma * p.sigma * (a * a + tau * tau);
}

/// <a^dagger a> for the trial width sigma^2, given the variances of a state.
template <typename Scalar>
Scalar annihilation_occupation(Scalar var_x, Scalar var_p, Scalar sigma_sq,
                               const Constants<Scalar>& c) {
  return var_x / (4 * sigma_sq) + sigma_sq * var_p / (c.hbar * c.hbar) - Scalar(0.5);
}

/// Width that minimizes <a^dagger a> for given dx, dp: hbar dx / (2 dp).
template <typename Scalar>
Scalar min_uncertainty_sigma_sq(Scalar dx, Scalar dp, const Constants<Scalar>& c) {
  detail::require_positive(dx, "dx");
  detail::require_positive(dp, "dp");
  return c.hbar * dx / (2 * dp);
}

/// Complex amplitude psi(x, t).
///
/// The exponent coefficient A0 = (1 - iC)/4 sigma^2 evolves as
/// A(t) = A0 / z with z = 1 + 2i hbar t A0 / m, and the amplitude picks up
/// z^(-1/2). The principal root is continuous in t because Im z has the sign
/// of t and z = 1 at t = 0. For C = 0 this is the textbook spreading packet.
template <typename Scalar>
std::complex<Scalar> wavefunction(const GaussianPacket<Scalar>& p, Scalar x, Scalar t,
                                  const Constants<Scalar>& c) {
  using std::exp;
  using std::pow;
  using std::sqrt;
  using cplx = std::complex<Scalar>;
  const Scalar s2 = p.sigma * p.sigma;
  const cplx a0 = cplx(1, -p.squeeze) / (4 * s2);
  const cplx z = Scalar(1) + cplx(0, 2 * c.hbar * t / p.mass) * a0;
  const cplx a = a0 / z;
  const Scalar shift = x - p.x0 - p.v0 * t;
  const Scalar k0 = p.mass * p.v0 / c.hbar;
  const Scalar phase = k0 * x - k0 * p.v0 * t / 2;
  const Scalar norm = pow(2 * std::numbers::pi_v<Scalar> * s2, Scalar(-0.25));
  return norm / sqrt(z) * exp(-a * shift * shift + cplx(0, phase));
}

/// |psi(x, t)|^2 as a normalized Gaussian around x0 + v0 t.
template <typename Scalar>
Scalar probability_density(const GaussianPacket<Scalar>& p, Scalar x, Scalar t,
                           const Constants<Scalar>& c) {
  using std::exp;
  using std::sqrt;
  const Scalar var = packet_variance(p, t, c);
  const Scalar u = x - p.x0 - p.v0 * t;
  return exp(-u * u / (2 * var)) / sqrt(2 * std::numbers::pi_v<Scalar> * var);
}

/// 2 dx dp / hbar; equals 1 for a minimum-uncertainty state.
template <typename Scalar>
Scalar uncertainty_product(const MomentSet<Scalar>& m, const Constants<Scalar>& c) {
  using std::sqrt;
  return 2 * sqrt(m.var_x() * m.var_p()) / c.hbar;
}

/// Time for the mean square width of a minimum-uncertainty packet to double.
template <typename Scalar>
Scalar doubling_time(const GaussianPacket<Scalar>& p, const Constants<Scalar>& c) {
  validate(p);
  if (p.squeeze != Scalar(0))
    throw UnsupportedConfiguration("doubling time is defined for unsqueezed packets only");
  return 2 * p.mass * p.sigma * p.sigma / c.hbar;
}

/// de Broglie wavelength 2 pi hbar / (m |v|).
template <typename Scalar>
Scalar de_broglie_wavelength(Scalar mass, Scalar velocity, const Constants<Scalar>& c) {
  using std::abs;
  detail::require_positive(mass, "mass");
  if (velocity == Scalar(0)) throw DomainError("de Broglie wavelength undefined at rest");
  return 2 * std::numbers::pi_v<Scalar> * c.hbar / (mass * abs(velocity));
}

/// Distance travelled while the mean square width doubles: v0 * doubling_time.
/// Equals 4 pi sigma^2 / lambda with the standard de Broglie wavelength.
template <typename Scalar>
Scalar doubling_distance(const GaussianPacket<Scalar>& p, const Constants<Scalar>& c) {
  return p.v0 * doubling_time(p, c);
}

}  // namespace wavepkt
