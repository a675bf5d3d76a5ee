#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "wavepkt/gaussian.hpp"
#include "wavepkt/propagator.hpp"

using namespace wavepkt;
using doctest::Approx;

namespace {

const auto nat = constants_for(UnitMode::natural);

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("initial moments of a minimum-uncertainty packet") {
  const GaussianPacket<double> p{2.0, 0.7, 1.5, -0.3, 0.0};
  const auto m = initial_moments(p, nat);
  CHECK(m.mean_x == 1.5);
  CHECK(m.mean_p == Approx(-0.6));
  CHECK(m.mean_x2 == Approx(1.5 * 1.5 + 0.49));
  CHECK(m.mean_p2 == Approx(0.36 + 1.0 / (4 * 0.49)));
  CHECK(m.mean_sym_xp == Approx(2 * 1.5 * -0.6));
}

TEST_CASE("initial moments of a squeezed packet at rest") {
  const double C = -1.7, s = 1.3;
  const auto m = initial_moments(GaussianPacket<double>{1.0, s, 0.0, 0.0, C}, nat);
  CHECK(m.mean_x == 0.0);
  CHECK(m.mean_p == 0.0);
  CHECK(m.mean_x2 == Approx(s * s));
  CHECK(m.mean_p2 == Approx((1 + C * C) / (4 * s * s)));
  CHECK(m.mean_sym_xp == Approx(C));
}

TEST_CASE("squeezed, displaced, boosted moments agree with direct quadrature") {
  // Frozen from oracle::quadrature_moments over the explicit wavefunction
  // (n = 4096, span +-20 sigma): 0.5, 1.99999999998589, 1.25, 6.49999999986412, 4.99999999993823.
  const double s = 1, x0 = 0.5, v0 = 2, C = 3;
  auto psi = [&](double x) {
    const double u = x - x0;
    return std::pow(2 * std::numbers::pi * s * s, -0.25) *
           std::exp(oracle::cplx(-u * u / (4 * s * s), C * u * u / (4 * s * s) + v0 * x));
  };
  const auto q = oracle::quadrature_moments(psi, x0, 20 * s, 4096, 1.0);
  CHECK(q.x == Approx(0.5).epsilon(1e-9));
  CHECK(q.p == Approx(2.0).epsilon(1e-9));
  CHECK(q.x2 == Approx(1.25).epsilon(1e-9));
  CHECK(q.p2 == Approx(6.5).epsilon(1e-9));
  CHECK(q.sym_xp == Approx(5.0).epsilon(1e-9));

  const auto m = initial_moments(GaussianPacket<double>{1, s, x0, v0, C}, nat);
  CHECK(rel(m.mean_x, 0.5) < 1e-12);
  CHECK(rel(m.mean_p, 2.0) < 1e-12);
  CHECK(rel(m.mean_x2, 1.25) < 1e-12);
  CHECK(rel(m.mean_p2, 6.5) < 1e-12);
  CHECK(rel(m.mean_sym_xp, 5.0) < 1e-12);
}

TEST_CASE("invalid packets are rejected") {
  CHECK_THROWS_AS(initial_moments(GaussianPacket<double>{0.0, 1.0}, nat), DomainError);
  CHECK_THROWS_AS(initial_moments(GaussianPacket<double>{1.0, -1.0}, nat), DomainError);
  CHECK_THROWS_AS(initial_moments(GaussianPacket<double>{1.0, 1.0, NAN}, nat), DomainError);
  CHECK_THROWS_AS(packet_variance(GaussianPacket<double>{1.0, 0.0}, 1.0, nat), DomainError);
}

TEST_CASE("evolve_moments") {
  const MomentSet<double> m0{0.3, -1.2, 2.0, 3.5, 0.7};

  SUBCASE("t = 0 is the identity") {
    const auto m = evolve_moments(m0, 1.3, 0.0);
    CHECK(m.mean_x == m0.mean_x);
    CHECK(m.mean_x2 == m0.mean_x2);
    CHECK(m.mean_sym_xp == m0.mean_sym_xp);
  }

  SUBCASE("doubling of the minimum-uncertainty width") {
    const auto init = initial_moments(GaussianPacket<double>{}, nat);
    CHECK(evolve_moments(init, 1.0, 2.0).var_x() == Approx(2.0).epsilon(1e-14));
  }

  SUBCASE("matches RK4 integration of the moment ODEs") {
    // Frozen from oracle::rk4_moments(step 1e-5, t = 1.7, m = 1.3).
    const auto ref = oracle::rk4_moments((Eigen::Matrix<double, 5, 1>() << 0.3, -1.2, 2.0, 3.5, 0.7).finished(),
                                         1.3, 1.7, 1e-5);
    CHECK(ref[0] == Approx(-1.26923076922972).epsilon(1e-13));
    CHECK(ref[2] == Approx(8.90059171596534).epsilon(1e-13));
    CHECK(ref[4] == Approx(9.85384615384915).epsilon(1e-13));
    const auto m = evolve_moments(m0, 1.3, 1.7);
    // 1e5 RK4 steps accumulate roundoff near 1e-12.
    CHECK(rel(m.mean_x, -1.26923076922972) < 1e-10);
    CHECK(m.mean_p == m0.mean_p);
    CHECK(rel(m.mean_x2, 8.90059171596534) < 1e-10);
    CHECK(m.mean_p2 == m0.mean_p2);
    CHECK(rel(m.mean_sym_xp, 9.85384615384915) < 1e-10);
    const double t = 1.7, mass = 1.3;
    CHECK(rel(m.mean_x2, 2.0 + 0.7 * t / mass + 3.5 * t * t / (mass * mass)) < 1e-14);
  }
}

TEST_CASE("variance_x_at reproduces the closed-form spreading laws") {
  for (double t : {-3.0, -0.4, 0.0, 0.5, 2.0, 17.0}) {
    const GaussianPacket<double> plain{1.7, 0.8, 0.4, 1.1, 0.0};
    const double s2 = plain.sigma * plain.sigma;
    const double q = t / (2 * plain.mass * plain.sigma);
    CHECK(rel(variance_x_at(initial_moments(plain, nat), plain.mass, t), s2 + q * q) < 1e-12);

    for (double C : {-2.5, -0.3, 1.0}) {
      const GaussianPacket<double> sq{1.7, 0.8, 0.0, 0.0, C};
      const double a = 1 + C * t / (2 * s2 * sq.mass);
      CHECK(rel(variance_x_at(initial_moments(sq, nat), sq.mass, t), s2 * a * a + q * q) < 1e-12);
      CHECK(rel(packet_variance(sq, t, nat), s2 * a * a + q * q) < 1e-12);
    }
  }
  const auto m0 = initial_moments(GaussianPacket<double>{1.0, 0.6}, nat);
  CHECK(variance_x_at(m0, 1.0, 0.0) == Approx(0.36).epsilon(1e-15));
}

TEST_CASE("min_uncertainty_sigma_sq") {
  CHECK(min_uncertainty_sigma_sq(1.0, 0.5, nat) == Approx(1.0));
  CHECK(min_uncertainty_sigma_sq(2.0, 1.0, nat) == Approx(1.0));
  CHECK_THROWS_AS(min_uncertainty_sigma_sq(0.0, 1.0, nat), DomainError);
  CHECK_THROWS_AS(min_uncertainty_sigma_sq(1.0, -1.0, nat), DomainError);

  // Brute-force scan of <a^dagger a>(sigma^2) on a log grid of 1e4 points.
  for (auto [dx, dp] : {std::pair{1.0, 0.5}, std::pair{2.0, 3.0}, std::pair{0.05, 40.0}}) {
    const double target = min_uncertainty_sigma_sq(dx, dp, nat);
    double best = 0, best_val = INFINITY;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
      const double s2 = std::pow(10.0, -4 + 8.0 * i / (n - 1));
      const double v = annihilation_occupation(dx * dx, dp * dp, s2, nat);
      if (v < best_val) best_val = v, best = s2;
    }
    // Grid spacing is 8 decades / 1e4 points, i.e. a factor of 1.0018.
    CHECK(std::abs(std::log(best / target)) < 2e-3);
    CHECK(best_val >= -1e-12);
    CHECK(annihilation_occupation(dx * dx, dp * dp, target, nat) ==
          Approx(dx * dp - 0.5).epsilon(1e-12));
  }
}

TEST_CASE("wavefunction at t = 0 is the sampled initial packet") {
  const GaussianPacket<double> p{1.0, 1.3, 0.4, 0.7, 0.0};
  for (double x : {-3.0, 0.0, 0.4, 2.2}) {
    const auto psi = wavefunction(p, x, 0.0, nat);
    const auto ref = std::pow(2 * std::numbers::pi * 1.69, -0.25) *
                     std::exp(std::complex<double>(-(x - 0.4) * (x - 0.4) / (4 * 1.69), 0.7 * x));
    CHECK(std::abs(psi - ref) < 1e-15);
  }
}

TEST_CASE("unsqueezed wavefunction is the textbook spreading packet") {
  const GaussianPacket<double> p{1.2, 0.9, -0.5, 1.4, 0.0};
  using cplx = std::complex<double>;
  for (double t : {0.3, 1.0, 4.0, -2.0})
    for (double x : {-2.0, 0.0, 1.0, 5.0}) {
      const cplx width = cplx(p.sigma, t / (2 * p.mass * p.sigma));
      const cplx ref = std::pow(2 * std::numbers::pi * width * width, -0.25) *
                       std::exp(-std::pow(x - p.x0 - p.v0 * t, 2) / cplx(4 * p.sigma * p.sigma, 2 * t / p.mass) +
                                cplx(0, p.mass * p.v0 * x - p.mass * p.v0 * p.v0 * t / 2));
      // The fourth root branch is fixed by continuity from t = 0, which for
      // |arg| < pi agrees with the principal root above.
      CHECK(std::abs(wavefunction(p, x, t, nat) - ref) < 1e-14);
    }
}

TEST_CASE("wavefunction is normalized and its density matches probability_density") {
  for (double C : {0.0, -2.0, 1.5}) {
    const GaussianPacket<double> p{1.0, 1.0, 0.0, 0.3, C};
    const double t = 3.0;
    const Grid<double> g{-60, 60, 8192};
    double norm = 0;
    for (Eigen::Index j = 0; j < g.n; ++j) {
      const double x = g.x(j);
      const double dens = std::norm(wavefunction(p, x, t, nat));
      norm += dens * g.dx();
      CHECK(rel(probability_density(p, x, t, nat), dens) < 1e-12 + 1e-300 / (dens + 1e-300));
    }
    CHECK(norm == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("squeezed wavefunction matches kernel quadrature of the initial state") {
  // sigma = 1, m = hbar = 1, C = -2, t = 0.5: evaluate the free propagator
  // integral directly with a fine trapezoid rule at a handful of points.
  const GaussianPacket<double> p{1.0, 1.0, 0.0, 0.0, -2.0};
  const double t = 0.5;
  const int n = 40001;
  const double half = 20.0, h = 2 * half / (n - 1);
  using cplx = std::complex<double>;
  const cplx pref = std::sqrt(cplx(1.0) / cplx(0, 2 * std::numbers::pi * t));
  for (double x : {-3.0, -1.0, 0.0, 0.5, 2.5}) {
    cplx acc = 0;
    for (int j = 0; j < n; ++j) {
      const double xp = -half + j * h;
      const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
      const cplx phi0 = std::pow(2 * std::numbers::pi, -0.25) * std::exp(cplx(-xp * xp / 4, -2.0 * xp * xp / 4));
      acc += w * std::exp(cplx(0, (x - xp) * (x - xp) / (2 * t))) * phi0;
    }
    const cplx ref = pref * acc * h;
    const cplx got = wavefunction(p, x, t, nat);
    CHECK(std::abs(got - ref) <= 1e-8 * std::abs(ref));
  }
}

TEST_CASE("probability_density") {
  const GaussianPacket<double> p{1.0, 0.8, 0.25, 0.0, 0.0};
  CHECK(probability_density(p, 0.25, 0.0, nat) == Approx(1 / std::sqrt(2 * std::numbers::pi * 0.64)));

  SUBCASE("C = 0 against the explicit Gaussian at 20 points") {
    const GaussianPacket<double> q{1.4, 0.8, -1.0, 0.6, 0.0};
    const double t = 2.3;
    const double var = 0.64 + std::pow(t / (2 * 1.4 * 0.8), 2);
    for (int i = 0; i < 20; ++i) {
      const double x = -6.0 + 0.6 * i;
      const double u = x + 1.0 - 0.6 * t;
      const double ref = std::exp(-u * u / (2 * var)) / std::sqrt(2 * std::numbers::pi * var);
      CHECK(rel(probability_density(q, x, t, nat), ref) < 1e-12);
    }
  }

  SUBCASE("C = -1 at t = sigma^2 m / hbar matches |psi|^2") {
    const GaussianPacket<double> q{1.0, 1.1, 0.0, 0.0, -1.0};
    const double t = 1.21;
    for (double x = -5; x <= 5; x += 0.5)
      CHECK(rel(probability_density(q, x, t, nat), std::norm(wavefunction(q, x, t, nat))) < 1e-12);
  }
}

TEST_CASE("uncertainty_product") {
  const auto mu = initial_moments(GaussianPacket<double>{1.0, 0.7, 0.3, -0.2, 0.0}, nat);
  CHECK(uncertainty_product(mu, nat) == Approx(1.0).epsilon(1e-12));

  for (double C : {-4.0, -1.0, 0.5, 3.0}) {
    const auto m = initial_moments(GaussianPacket<double>{1.0, 0.7, 0.0, 0.0, C}, nat);
    CHECK(uncertainty_product(m, nat) == Approx(std::sqrt(1 + C * C)).epsilon(1e-12));
  }

  // C = 0 evolved to t: sqrt(1 + (hbar t / 2 m sigma^2)^2).
  const GaussianPacket<double> p{1.5, 0.9};
  for (double t : {0.5, 2.0, 10.0}) {
    const auto m = evolve_moments(initial_moments(p, nat), p.mass, t);
    const double tau = t / (2 * p.mass * 0.81);
    CHECK(uncertainty_product(m, nat) == Approx(std::sqrt(1 + tau * tau)).epsilon(1e-12));
  }
}

TEST_CASE("doubling time") {
  const GaussianPacket<double> p{1.0, 1.0};
  CHECK(doubling_time(p, nat) == 2.0);
  CHECK(packet_variance(p, 2.0, nat) == Approx(2.0));
  CHECK(doubling_time(GaussianPacket<double>{1.0, 2.0}, nat) == 4 * doubling_time(p, nat));
  CHECK(doubling_time(GaussianPacket<double>{2.0, 1.0}, nat) == 2 * doubling_time(p, nat));
  CHECK_THROWS_AS(doubling_time(GaussianPacket<double>{1.0, 1.0, 0.0, 0.0, 0.5}, nat),
                  UnsupportedConfiguration);
}

TEST_CASE("distance travelled while the width doubles") {
  const GaussianPacket<double> p{2.0, 0.5, 0.0, 3.0, 0.0};
  const double lambda = de_broglie_wavelength(p.mass, p.v0, nat);
  CHECK(lambda == Approx(2 * std::numbers::pi / 6.0));
  CHECK(doubling_distance(p, nat) == Approx(4 * std::numbers::pi * 0.25 / lambda));
  CHECK_THROWS_AS(de_broglie_wavelength(1.0, 0.0, nat), DomainError);
}

TEST_CASE("squeezed packets with C < 0 contract before spreading") {
  for (double C : {-0.5, -2.0, -8.0}) {
    const GaussianPacket<double> p{1.3, 0.7, 0.0, 0.0, C};
    const double h = 1e-6;
    const double slope = (packet_variance(p, h, nat) - packet_variance(p, -h, nat)) / (2 * h);
    CHECK(slope == Approx(C / p.mass).epsilon(1e-6));
    CHECK(slope < 0);
    const double t_far = 1e6 * std::abs(2 * 0.49 * p.mass / C);
    CHECK(packet_variance(p, t_far, nat) > 1e6 * packet_variance(p, 0.0, nat));
  }
}
