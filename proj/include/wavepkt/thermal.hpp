#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <string>

#include "wavepkt/errors.hpp"
#include "wavepkt/gaussian.hpp"
#include "wavepkt/monte_carlo.hpp"
#include "wavepkt/units.hpp"

namespace wavepkt {

/// A packet whose initial velocity is Maxwell distributed around packet.v0.
template <typename Scalar>
struct ThermalScenario {
  GaussianPacket<Scalar> packet;
  Scalar temperature{0};
};

template <typename Scalar>
void validate(const ThermalScenario<Scalar>& s) {
  validate(s.packet);
  detail::require_nonnegative(s.temperature, "temperature");
}

namespace detail {

template <typename Scalar>
Scalar velocity_variance(const ThermalScenario<Scalar>& s, const Constants<Scalar>& c) {
  return c.k_boltzmann * s.temperature / s.packet.mass;
}

template <typename Scalar>
void require_unsqueezed(const ThermalScenario<Scalar>& s, const char* what) {
  if (s.packet.squeeze != Scalar(0))
    throw UnsupportedConfiguration(std::string(what) +
                                   " has no closed form for squeezed packets; use the Monte Carlo path");
}

}  // namespace detail

/// Quantum spreading plus the Maxwell term (kT/m) t^2. Valid for any C.
template <typename Scalar>
Scalar thermal_variance(const ThermalScenario<Scalar>& s, Scalar t, const Constants<Scalar>& c) {
  validate(s);
  return packet_variance(s.packet, t, c) + detail::velocity_variance(s, c) * t * t;
}

/// Maxwell-averaged probability density. Unsqueezed packets only.
template <typename Scalar>
Scalar thermal_density(const ThermalScenario<Scalar>& s, Scalar x, Scalar t,
                       const Constants<Scalar>& c) {
  using std::exp;
  using std::sqrt;
  detail::require_unsqueezed(s, "thermal density");
  const Scalar var = thermal_variance(s, t, c);
  const Scalar u = x - s.packet.x0 - s.packet.v0 * t;
  return exp(-u * u / (2 * var)) / sqrt(2 * std::numbers::pi_v<Scalar> * var);
}

/// Maxwell-averaged initial moments. Unsqueezed packets only.
template <typename Scalar>
MomentSet<Scalar> thermal_moments(const ThermalScenario<Scalar>& s, const Constants<Scalar>& c) {
  validate(s);
  detail::require_unsqueezed(s, "thermal moments");
  MomentSet<Scalar> m = initial_moments(s.packet, c);
  m.mean_p2 += s.packet.mass * c.k_boltzmann * s.temperature;
  return m;
}

/// <x|rho|x'> of the thermal mixture at t = 0.
///
/// Real and symmetric when the ensemble is at rest; a nonzero mean velocity
/// adds the Hermitian phase exp{i m v0 (x - x')/hbar}.
template <typename Scalar>
std::complex<Scalar> density_matrix_element(const ThermalScenario<Scalar>& s, Scalar x,
                                            Scalar x_prime, const Constants<Scalar>& c) {
  using std::exp;
  using std::sqrt;
  validate(s);
  detail::require_unsqueezed(s, "thermal density matrix");
  const auto& p = s.packet;
  const Scalar s2 = p.sigma * p.sigma;
  const Scalar u = x - p.x0;
  const Scalar w = x_prime - p.x0;
  const Scalar r = x - x_prime;
  const Scalar magnitude =
      exp(-(u * u + w * w) / (4 * s2) -
          p.mass * c.k_boltzmann * s.temperature * r * r / (2 * c.hbar * c.hbar)) /
      sqrt(2 * std::numbers::pi_v<Scalar> * s2);
  return std::polar(magnitude, p.mass * p.v0 * r / c.hbar);
}

/// hbar / sqrt(m k T).
template <typename Scalar>
Scalar mean_de_broglie_wavelength(Scalar mass, Scalar temperature, const Constants<Scalar>& c) {
  using std::sqrt;
  detail::require_positive(mass, "mass");
  detail::require_positive(temperature, "temperature");
  return c.hbar / sqrt(mass * c.k_boltzmann * temperature);
}

template <typename Scalar>
struct SpreadingRatio {
  Scalar ratio{0};  ///< thermal over quantum spreading, m k T sigma^2 / 4 hbar^2
  std::optional<Scalar> mean_de_broglie;  ///< empty at T = 0
};

template <typename Scalar>
SpreadingRatio<Scalar> spreading_ratio(const ThermalScenario<Scalar>& s, const Constants<Scalar>& c) {
  validate(s);
  const auto& p = s.packet;
  if (s.temperature == Scalar(0)) return {Scalar(0), std::nullopt};
  const Scalar ratio =
      p.mass * c.k_boltzmann * s.temperature * p.sigma * p.sigma / (4 * c.hbar * c.hbar);
  return {ratio, mean_de_broglie_wavelength(p.mass, s.temperature, c)};
}

/// The free-particle treatment ignores coupling to the bath; it holds only
/// while gamma t stays small.
template <typename Scalar>
bool within_dissipationless_regime(Scalar gamma, Scalar t, Scalar threshold = Scalar(0.1)) {
  using std::abs;
  detail::require_nonnegative(gamma, "decay rate");
  return gamma * abs(t) < threshold;
}

/// Averages `observable(v0)` over the Maxwell distribution of `s`.
template <typename Scalar, typename Observable>
McEstimate<Scalar> maxwell_average(const ThermalScenario<Scalar>& s, const Constants<Scalar>& c,
                                   const McOptions& opts, Eigen::Index dims,
                                   Observable&& observable) {
  using std::sqrt;
  validate(s);
  const Scalar spread = sqrt(detail::velocity_variance(s, c));
  const Scalar mean = s.packet.v0;
  return normal_average<Scalar>(opts, dims,
                                [&](Scalar z) { return observable(mean + spread * z); });
}

/// Monte Carlo estimate of the thermal density at each of `xs`. Works for
/// squeezed packets, where no closed form is available.
template <typename Scalar>
McEstimate<Scalar> mc_thermal_density(const ThermalScenario<Scalar>& s, std::span<const Scalar> xs,
                                      Scalar t, const Constants<Scalar>& c, const McOptions& opts) {
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
  validate(s);
  if (opts.n_samples < 100) throw DomainError("Monte Carlo density needs at least 100 samples");
  const auto dims = static_cast<Eigen::Index>(xs.size());
  if (s.temperature == Scalar(0)) {
    Array exact(dims);
    for (Eigen::Index i = 0; i < dims; ++i) exact[i] = probability_density(s.packet, xs[i], t, c);
    return {exact, Array::Zero(dims)};
  }
  return maxwell_average(s, c, opts, dims, [&](Scalar v0) {
    GaussianPacket<Scalar> boosted = s.packet;
    boosted.v0 = v0;
    Array out(dims);
    for (Eigen::Index i = 0; i < dims; ++i) out[i] = probability_density(boosted, xs[i], t, c);
    return out;
  });
}

template <typename Scalar>
McEstimate<Scalar> mc_thermal_density(const ThermalScenario<Scalar>& s, Scalar x, Scalar t,
                                      const Constants<Scalar>& c, const McOptions& opts) {
  return mc_thermal_density(s, std::span<const Scalar>(&x, 1), t, c, opts);
}

/// Monte Carlo estimate of the mixture variance at t: each member contributes
/// its quantum width plus the squared offset of its center.
template <typename Scalar>
McEstimate<Scalar> mc_thermal_variance(const ThermalScenario<Scalar>& s, Scalar t,
                                       const Constants<Scalar>& c, const McOptions& opts) {
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
  const Scalar quantum = packet_variance(s.packet, t, c);
  return maxwell_average(s, c, opts, 1, [&](Scalar v0) {
    const Scalar offset = (v0 - s.packet.v0) * t;
    return Array::Constant(1, quantum + offset * offset);
  });
}

}  // namespace wavepkt
