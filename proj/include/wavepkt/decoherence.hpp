#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>

#include "wavepkt/errors.hpp"
#include "wavepkt/gaussian.hpp"
#include "wavepkt/units.hpp"

namespace wavepkt {

/// Two unsqueezed packets at rest centered at +d/2 and -d/2, superposed with
/// equal weight, in a Maxwell ensemble at the given temperature.
template <typename Scalar>
struct CatScenario {
  Scalar sigma{1};
  Scalar separation{4};
  Scalar mass{1};
  Scalar temperature{0};
};

template <typename Scalar>
void validate(const CatScenario<Scalar>& s) {
  detail::require_positive(s.sigma, "sigma");
  detail::require_nonnegative(s.separation, "separation");
  detail::require_positive(s.mass, "mass");
  detail::require_nonnegative(s.temperature, "temperature");
}

/// The three contributions to the cat-state density at one point.
template <typename Scalar>
struct CatDensity {
  Scalar packet1;       ///< packet centered at +d/2
  Scalar packet2;       ///< packet centered at -d/2
  Scalar interference;  ///< cross term, including the attenuation factor
  Scalar total() const { return packet1 + packet2 + interference; }
};

/// 1 / sqrt(2 (1 + exp(-d^2 / 8 sigma^2)))
template <typename Scalar>
Scalar cat_norm(const CatScenario<Scalar>& s) {
  using std::exp;
  using std::sqrt;
  validate(s);
  const Scalar d = s.separation;
  return 1 / sqrt(2 * (1 + exp(-d * d / (8 * s.sigma * s.sigma))));
}

namespace detail {

template <typename Scalar>
Scalar quantum_width_sq(const CatScenario<Scalar>& s, Scalar t, const Constants<Scalar>& c) {
  const Scalar q = c.hbar * t / (2 * s.mass * s.sigma);
  return s.sigma * s.sigma + q * q;
}

template <typename Scalar>
Scalar thermal_width_sq(const CatScenario<Scalar>& s, Scalar t, const Constants<Scalar>& c) {
  return quantum_width_sq(s, t, c) + c.k_boltzmann * s.temperature / s.mass * t * t;
}

// Three-term density with variance `var` and interference weight `a`.
template <typename Scalar>
CatDensity<Scalar> cat_terms(const CatScenario<Scalar>& s, Scalar x, Scalar t, Scalar var,
                             Scalar a, const Constants<Scalar>& c) {
  using std::cos;
  using std::exp;
  using std::sqrt;
  const Scalar n = cat_norm(s);
  const Scalar pre = n * n / sqrt(2 * std::numbers::pi_v<Scalar> * var);
  const Scalar half = s.separation / 2;
  const Scalar phase =
      c.hbar * t * s.separation * x / (4 * s.mass * s.sigma * s.sigma * var);
  return {
      pre * exp(-(x - half) * (x - half) / (2 * var)),
      pre * exp(-(x + half) * (x + half) / (2 * var)),
      pre * 2 * a *
          exp(-x * x / (2 * var) - s.separation * s.separation / (8 * var)) * cos(phase),
  };
}

}  // namespace detail

/// Pure-state cat density; the temperature field is ignored.
template <typename Scalar>
CatDensity<Scalar> cat_components_zero_T(const CatScenario<Scalar>& s, Scalar x, Scalar t,
                                         const Constants<Scalar>& c) {
  validate(s);
  return detail::cat_terms(s, x, t, detail::quantum_width_sq(s, t, c), Scalar(1), c);
}

template <typename Scalar>
Scalar cat_density_zero_T(const CatScenario<Scalar>& s, Scalar x, Scalar t,
                          const Constants<Scalar>& c) {
  return cat_components_zero_T(s, x, t, c).total();
}

/// exp{-(kT/m) t^2 d^2 / (8 sigma^4 + 8 sigma^2 (kT/m) t^2 + 2 hbar^2 t^2 / m^2)}
template <typename Scalar>
Scalar attenuation(const CatScenario<Scalar>& s, Scalar t, const Constants<Scalar>& c) {
  using std::exp;
  validate(s);
  const Scalar v2 = c.k_boltzmann * s.temperature / s.mass;
  const Scalar s2 = s.sigma * s.sigma;
  const Scalar ht = c.hbar * t / s.mass;
  const Scalar num = v2 * t * t * s.separation * s.separation;
  if (num == Scalar(0)) return Scalar(1);
  return exp(-num / (8 * s2 * s2 + 8 * s2 * v2 * t * t + 2 * ht * ht));
}

/// Maxwell-averaged cat density.
template <typename Scalar>
CatDensity<Scalar> cat_components_thermal(const CatScenario<Scalar>& s, Scalar x, Scalar t,
                                          const Constants<Scalar>& c) {
  validate(s);
  return detail::cat_terms(s, x, t, detail::thermal_width_sq(s, t, c), attenuation(s, t, c), c);
}

template <typename Scalar>
Scalar cat_density_thermal(const CatScenario<Scalar>& s, Scalar x, Scalar t,
                           const Constants<Scalar>& c) {
  return cat_components_thermal(s, x, t, c).total();
}

/// sqrt(8) sigma^2 / (vbar d) with vbar = sqrt(kT/m). Infinite when T = 0 or d = 0.
template <typename Scalar>
Scalar decoherence_time(const CatScenario<Scalar>& s, const Constants<Scalar>& c) {
  using std::sqrt;
  validate(s);
  if (s.temperature == Scalar(0) || s.separation == Scalar(0))
    return std::numeric_limits<Scalar>::infinity();
  const Scalar vbar = thermal_velocity(s.mass, s.temperature, c);
  return sqrt(Scalar(8)) * s.sigma * s.sigma / (vbar * s.separation);
}

/// exp(-t^2 / tau_d^2); the t-dependent terms of the denominator are dropped.
template <typename Scalar>
Scalar attenuation_short_time(const CatScenario<Scalar>& s, Scalar t, const Constants<Scalar>& c) {
  using std::exp;
  const Scalar tau = decoherence_time(s, c);
  if (tau == std::numeric_limits<Scalar>::infinity()) return Scalar(1);
  return exp(-(t / tau) * (t / tau));
}

template <typename Scalar>
struct AttenuationFit {
  Scalar attenuation;
  Scalar max_residual;  ///< relative to the peak sample
};

/// Recovers a(t) from density samples of a cat state.
///
/// The packet terms and the shape of the interference term are fixed by the
/// scenario (centers +-d/2, width from the thermal spreading law), so the only
/// free parameter is the coefficient of the interference term, obtained by
/// linear least squares. That coefficient is the ratio of the factor
/// multiplying the cosine to twice the geometric mean of the packet terms.
template <typename Scalar>
AttenuationFit<Scalar> measure_attenuation_from_density(std::span<const Scalar> xs,
                                                        std::span<const Scalar> density,
                                                        const CatScenario<Scalar>& s, Scalar t,
                                                        const Constants<Scalar>& c,
                                                        Scalar residual_tolerance = Scalar(1e-6)) {
  using std::abs;
  using std::max;
  validate(s);
  if (xs.size() != density.size() || xs.empty())
    throw DomainError("density samples and abscissae must be non-empty and of equal length");
  const Scalar var = detail::thermal_width_sq(s, t, c);

  Scalar num = 0, den = 0, peak = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto unit = detail::cat_terms(s, xs[i], t, var, Scalar(1), c);
    const Scalar rest = density[i] - unit.packet1 - unit.packet2;
    num += rest * unit.interference;
    den += unit.interference * unit.interference;
    peak = max(peak, abs(density[i]));
  }
  if (!(den > Scalar(0)) || !(peak > Scalar(0)))
    throw ModelMismatch("interference term is not resolved by the samples", 1.0);
  const Scalar a = num / den;

  Scalar worst = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto model = detail::cat_terms(s, xs[i], t, var, a, c);
    worst = max(worst, abs(density[i] - model.total()));
  }
  worst /= peak;
  if (worst > residual_tolerance)
    throw ModelMismatch("density samples deviate from the cat-state model by " +
                            std::to_string(static_cast<double>(worst)) + " of the peak",
                        static_cast<double>(worst));
  return {a, worst};
}

}  // namespace wavepkt
