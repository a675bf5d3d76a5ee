#include "cli/commands.hpp"

#include <cmath>
#include <map>
#include <span>

#include "wavepkt/decoherence.hpp"
#include "wavepkt/gaussian.hpp"
#include "wavepkt/squeeze_sql.hpp"
#include "wavepkt/thermal.hpp"

namespace wavepkt::cli {

namespace {

GaussianPacket<double> packet_from(const Config& cfg) {
  GaussianPacket<double> p{cfg.number("mass"), cfg.number("sigma"), cfg.number("x0"),
                           cfg.number("v0"), cfg.number("squeeze")};
  validate(p);
  return p;
}

ThermalScenario<double> thermal_from(const Config& cfg) {
  ThermalScenario<double> s{packet_from(cfg), cfg.number("temperature")};
  validate(s);
  return s;
}

McOptions mc_options(const Config& cfg) {
  return {cfg.integer("samples"), cfg.integer("seed"), cfg.threads};
}

void check_regime(const Config& cfg, double t, std::ostream& diag) {
  const double gamma = cfg.number("gamma");
  if (gamma > 0 && !within_dissipationless_regime(gamma, t))
    diag << "warning: gamma t = " << format_number(gamma * std::abs(t))
         << " is not small; the dissipationless free-particle results may not apply\n";
}

std::vector<double> time_sweep(const Config& cfg) {
  return sweep(cfg.number("t-min"), cfg.number("t-max"), cfg.integer("points"), cfg.flag("log"), "t");
}

}  // namespace

std::vector<double> sweep(double lo, double hi, std::uint64_t points, bool log, const char* what) {
  const std::string w(what);
  if (points == 0) throw UsageError("--points must be at least 1");
  if (hi < lo) throw UsageError(w + " range is reversed (max < min)");
  if (points > 10000000) throw UsageError("--points is too large");
  if (log && !(lo > 0)) throw UsageError("--log needs a positive lower " + w + " bound");
  if (points > 1 && hi == lo) throw UsageError(w + " range is empty but several points were requested");
  std::vector<double> out(points);
  for (std::uint64_t i = 0; i < points; ++i) {
    const double f = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
    out[i] = log ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
  }
  if (points > 1) out.back() = hi;
  return out;
}

std::string unit_label(UnitMode mode, const std::string& dimension) {
  if (mode == UnitMode::natural) return dimension;
  static const std::map<std::string, std::string> cgs_units = {
      {"1", "1"},          {"length", "cm"},   {"length^2", "cm^2"}, {"1/length", "1/cm"},
      {"time", "s"},       {"velocity", "cm/s"}, {"energy", "erg"},  {"mass", "g"},
  };
  return cgs_units.at(dimension);
}

CurveTable run_spread(const Config& cfg, std::ostream& diag) {
  const UnitMode mode = cfg.units();
  const auto c = constants_for(mode);
  const auto s = thermal_from(cfg);
  const auto ts = time_sweep(cfg);
  check_regime(cfg, ts.back(), diag);

  CurveTable table;
  table.columns = {{"t", unit_label(mode, "time")},
                   {"dx2_quantum", unit_label(mode, "length^2")},
                   {"dx2_thermal", unit_label(mode, "length^2")},
                   {"dx_rms", unit_label(mode, "length")}};
  for (double t : ts) {
    const double thermal = thermal_variance(s, t, c);
    table.add_row({t, packet_variance(s.packet, t, c), thermal, std::sqrt(thermal)});
  }
  return table;
}

CurveTable run_density(const Config& cfg, std::ostream& diag) {
  const UnitMode mode = cfg.units();
  const auto c = constants_for(mode);
  const double t = cfg.number("t");
  const auto xs = sweep(cfg.number("x-min"), cfg.number("x-max"), cfg.integer("points"), false, "x");
  check_regime(cfg, t, diag);
  const std::string px = unit_label(mode, "1/length");

  CurveTable table;
  if (cfg.flag("cat")) {
    const auto p = packet_from(cfg);
    if (p.x0 != 0 || p.v0 != 0 || p.squeeze != 0)
      throw UnsupportedConfiguration("cat densities are defined for packets at rest with C = 0 "
                                     "centered at +-separation/2 (set x0 = v0 = squeeze = 0)");
    const CatScenario<double> s{p.sigma, cfg.number("separation"), p.mass, cfg.number("temperature")};
    validate(s);
    table.columns = {{"x", unit_label(mode, "length")}, {"P", px}, {"P_packet1", px},
                     {"P_packet2", px}, {"P_interference", px}};
    const bool pure = s.temperature == 0;
    for (double x : xs) {
      const auto d = pure ? cat_components_zero_T(s, x, t, c) : cat_components_thermal(s, x, t, c);
      table.add_row({x, d.total(), d.packet1, d.packet2, d.interference});
    }
    table.metadata["attenuation"] = {{"value", attenuation(s, t, c)}, {"unit", "1"}};
    return table;
  }

  const auto s = thermal_from(cfg);
  table.columns = {{"x", unit_label(mode, "length")}, {"P", px}};
  if (s.temperature == 0) {
    for (double x : xs) table.add_row({x, probability_density(s.packet, x, t, c)});
  } else if (s.packet.squeeze == 0) {
    for (double x : xs) table.add_row({x, thermal_density(s, x, t, c)});
  } else {
    const auto mc = mc_thermal_density(s, std::span<const double>(xs), t, c, mc_options(cfg));
    table.columns.push_back({"P_std_error", px});
    for (std::size_t i = 0; i < xs.size(); ++i)
      table.add_row({xs[i], mc.mean[static_cast<Eigen::Index>(i)], mc.std_error[static_cast<Eigen::Index>(i)]});
  }
  return table;
}

CurveTable run_sql(const Config& cfg, std::ostream&) {
  const UnitMode mode = cfg.units();
  const auto c = constants_for(mode);
  const double mass = cfg.number("mass"), interval = cfg.number("interval");
  const auto cs = sweep(cfg.number("c-min"), cfg.number("c-max"), cfg.integer("points"), cfg.flag("log"), "C");

  CurveTable table;
  table.columns = {{"C", "1"},
                   {"optimal_sigma", unit_label(mode, "length")},
                   {"min_dx", unit_label(mode, "length")},
                   {"sql_ratio", "1"},
                   {"energy_cost", unit_label(mode, "energy")}};
  for (double C : cs) {
    const SqlQuery<double> q{mass, interval, C};
    const double bound = generalized_bound(q, c);
    table.add_row({C, std::sqrt(optimal_sigma_sq(q, c)), bound, bound / sql_bound(q, c), energy_cost(q, c)});
  }
  return table;
}

CurveTable run_decohere(const Config& cfg, std::ostream& diag) {
  const UnitMode mode = cfg.units();
  const auto c = constants_for(mode);
  const CatScenario<double> s{cfg.number("sigma"), cfg.number("separation"), cfg.number("mass"),
                              cfg.number("temperature")};
  validate(s);
  const auto ts = time_sweep(cfg);
  check_regime(cfg, ts.back(), diag);

  const double tau = decoherence_time(s, c);
  const double vbar = thermal_velocity(s.mass, s.temperature, c);
  CurveTable table;
  table.columns = {{"t", unit_label(mode, "time")}, {"a_exact", "1"}, {"a_short_time", "1"}};
  for (double t : ts) table.add_row({t, attenuation(s, t, c), attenuation_short_time(s, t, c)});
  table.metadata["tau_d"] = {{"value", tau}, {"unit", unit_label(mode, "time")}};
  table.metadata["vbar"] = {{"value", vbar}, {"unit", unit_label(mode, "velocity")}};
  diag << "tau_d = " << format_number(tau) << ' ' << unit_label(mode, "time") << '\n';
  diag << "vbar = " << format_number(vbar) << ' ' << unit_label(mode, "velocity") << '\n';
  return table;
}

}  // namespace wavepkt::cli
