#include "doctest.h"

#include "wavepkt/units.hpp"

using namespace wavepkt;

TEST_CASE("natural units set hbar and k to one") {
  const auto c = constants_for(UnitMode::natural);
  CHECK(c.hbar == 1.0);
  CHECK(c.k_boltzmann == 1.0);
}

TEST_CASE("cgs constants") {
  const auto c = constants_for(UnitMode::cgs);
  CHECK(c.hbar == 1.054571817e-27);
  CHECK(c.k_boltzmann == 1.380649e-16);
  CHECK(c.hbar > 0);
  CHECK(std::isfinite(c.hbar));
}

TEST_CASE("thermal velocity of an electron at room temperature") {
  const auto c = constants_for(UnitMode::cgs);
  const double v = thermal_velocity(cgs::electron_mass, 300.0, c);
  CHECK(std::abs(v - 6.8e6) / 6.8e6 < 0.01);
}

TEST_CASE("thermal velocity edge cases") {
  const auto nat = constants_for(UnitMode::natural);
  CHECK(thermal_velocity(3.0, 0.0, nat) == 0.0);
  CHECK(thermal_velocity(1.0, 1.0, nat) == 1.0);
  CHECK_THROWS_AS(thermal_velocity(0.0, 1.0, nat), DomainError);
  CHECK_THROWS_AS(thermal_velocity(-1.0, 1.0, nat), DomainError);
  CHECK_THROWS_AS(thermal_velocity(1.0, -1.0, nat), DomainError);
}

TEST_CASE("thermal velocity scales as sqrt(T / m)") {
  const auto c = constants_for(UnitMode::cgs);
  for (double m : {1e-27, 3.3e-24, 0.5, 12.0})
    for (double t : {0.01, 4.0, 300.0, 1e5}) {
      CHECK(thermal_velocity(m, 4 * t, c) == doctest::Approx(2 * thermal_velocity(m, t, c)).epsilon(1e-15));
      CHECK(thermal_velocity(4 * m, t, c) == doctest::Approx(thermal_velocity(m, t, c) / 2).epsilon(1e-15));
    }
}
