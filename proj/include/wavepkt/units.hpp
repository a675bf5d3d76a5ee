#pragma once

#include <cmath>
#include <string_view>

#include "wavepkt/errors.hpp"

namespace wavepkt {

enum class UnitMode { cgs, natural };

/// Reduced Planck constant and Boltzmann constant in one unit system.
template <typename Scalar>
struct Constants {
  Scalar hbar;
  Scalar k_boltzmann;
};

namespace cgs {
// CODATA 2018 exact values converted from SI.
inline constexpr double hbar = 1.054571817e-27;         // erg s
inline constexpr double k_boltzmann = 1.380649e-16;     // erg / K
inline constexpr double electron_mass = 9.1093837015e-28;  // g
inline constexpr double angstrom = 1e-8;                // cm
}  // namespace cgs

template <typename Scalar = double>
constexpr Constants<Scalar> constants_for(UnitMode mode) {
  if (mode == UnitMode::cgs)
    return {static_cast<Scalar>(cgs::hbar), static_cast<Scalar>(cgs::k_boltzmann)};
  return {Scalar(1), Scalar(1)};
}

/// Mean thermal velocity sqrt(kT/m).
template <typename Scalar>
Scalar thermal_velocity(Scalar mass, Scalar temperature, const Constants<Scalar>& c) {
  using std::sqrt;
  detail::require_positive(mass, "mass");
  detail::require_nonnegative(temperature, "temperature");
  return sqrt(c.k_boltzmann * temperature / mass);
}

constexpr std::string_view to_string(UnitMode mode) {
  return mode == UnitMode::cgs ? "cgs" : "natural";
}

}  // namespace wavepkt
