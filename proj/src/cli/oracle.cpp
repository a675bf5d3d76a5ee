#include "cli/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <span>

#include "cli/table.hpp"
#include "wavepkt/propagator.hpp"
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

Grid<double> resolve_grid(Config& cfg, const GaussianPacket<double>& p, double t,
                          const Constants<double>& c) {
  const auto n = static_cast<Eigen::Index>(cfg.integer("grid-n"));
  if (!cfg.has("grid-min") || !cfg.has("grid-max")) {
    const auto g = auto_grid(p, t, c, n);
    if (!cfg.has("grid-min")) cfg.values["grid-min"] = g.x_min;
    if (!cfg.has("grid-max")) cfg.values["grid-max"] = g.x_max;
  }
  const Grid<double> g{cfg.number("grid-min"), cfg.number("grid-max"), n};
  validate(g, true);
  return g;
}

double spectral_vs_analytic(Config& cfg, const Constants<double>& c) {
  const auto p = packet_from(cfg);
  const double t = cfg.number("t");
  const auto g = resolve_grid(cfg, p, t, c);
  const auto f = propagate_spectral(sample_initial(p, g, c), p.mass, t, c);
  double worst = 0;
  for (Eigen::Index j = 0; j < g.n; ++j)
    worst = std::max(worst, std::abs(std::norm(f.values[j]) - probability_density(p, g.x(j), t, c)));
  return worst;
}

double kernel_vs_spectral(Config& cfg, const Constants<double>& c) {
  const auto p = packet_from(cfg);
  const double t = cfg.number("t");
  const auto g = resolve_grid(cfg, p, t, c);
  const auto f0 = sample_initial(p, g, c);
  const auto fk = propagate_kernel(f0, p.mass, t, c);
  const auto fs = propagate_spectral(f0, p.mass, t, c);
  return (fk.values - fs.values).cwiseAbs().maxCoeff();
}

double mc_vs_closed_form(Config& cfg, const Constants<double>& c) {
  const ThermalScenario<double> s{packet_from(cfg), cfg.number("temperature")};
  const double t = cfg.number("t");
  const double center = s.packet.x0 + s.packet.v0 * t;
  const double width = std::sqrt(thermal_variance(s, t, c));
  std::array<double, 7> xs{};
  for (int k = -3; k <= 3; ++k) xs[k + 3] = center + k * width;
  const auto mc = mc_thermal_density(s, std::span<const double>(xs), t, c,
                                     McOptions{cfg.integer("samples"), cfg.integer("seed"), cfg.threads});
  double worst = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    const double diff = std::abs(mc.mean[idx] - thermal_density(s, xs[i], t, c));
    if (mc.std_error[idx] > 0) worst = std::max(worst, diff / mc.std_error[idx]);
    else if (diff > 0) worst = std::numeric_limits<double>::infinity();
  }
  return worst;
}

double minimize_vs_analytic(Config& cfg, const Constants<double>& c) {
  const double mass = cfg.number("mass"), t = cfg.number("t");
  double worst = 0;
  for (double C : {-100.0, -10.0, -1.0, 0.0, 1.0, 10.0, 100.0}) {
    const SqlQuery<double> q{mass, t, C};
    const auto n = numeric_minimize_variance(q, c);
    const double s2 = optimal_sigma_sq(q, c), v = min_variance(q, c);
    worst = std::max({worst, std::abs(n.argmin_sigma_sq - s2) / s2, std::abs(n.min_value - v) / v});
  }
  return worst;
}

double moments_vs_field(Config& cfg, const Constants<double>& c) {
  const auto p = packet_from(cfg);
  const double t = cfg.number("t");
  const auto g = resolve_grid(cfg, p, t, c);
  const auto f = propagate_spectral(sample_initial(p, g, c), p.mass, t, c);
  const auto m = moments_from_field(f, c);
  const auto ref = evolve_moments(initial_moments(p, c), p.mass, t);
  // Errors are measured against the natural scale of each moment.
  const double dx = std::sqrt(ref.var_x()), dp = std::sqrt(ref.var_p());
  return std::max({std::abs(m.mean_x - ref.mean_x) / dx, std::abs(m.mean_p - ref.mean_p) / dp,
                   std::abs(m.mean_x2 - ref.mean_x2) / ref.mean_x2,
                   std::abs(m.mean_p2 - ref.mean_p2) / ref.mean_p2,
                   std::abs(m.mean_sym_xp - ref.mean_sym_xp) / (2 * dx * dp)});
}

struct OracleEntry {
  const char* name;
  const char* metric;
  double tolerance;
  double (*run)(Config&, const Constants<double>&);
};

const std::array<OracleEntry, 5> kOracles = {{
    {"spectral-vs-analytic", "max abs density error", 1e-10, spectral_vs_analytic},
    {"kernel-vs-spectral", "max abs amplitude difference", 1e-6, kernel_vs_spectral},
    {"mc-vs-closed-form", "max deviation in standard errors over 7 probes", 3.0, mc_vs_closed_form},
    {"minimize-vs-analytic", "max relative error of argmin and minimum", 1e-8, minimize_vs_analytic},
    {"moments-vs-field", "max scaled moment error", 1e-8, moments_vs_field},
}};

}  // namespace

const std::vector<std::string>& oracle_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : kOracles) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

OracleReport run_oracle(Config& cfg) {
  const std::string name = cfg.text("name");
  const auto it = std::find_if(kOracles.begin(), kOracles.end(),
                               [&](const OracleEntry& e) { return name == e.name; });
  if (it == kOracles.end()) throw UsageError("unknown oracle '" + name + "'");
  if (!cfg.has("tolerance")) cfg.values["tolerance"] = it->tolerance;
  const double tol = cfg.number("tolerance");
  if (!(tol > 0)) throw UsageError("--tolerance must be positive");
  const double err = it->run(cfg, constants_for(cfg.units()));
  return {name, it->metric, err, tol, err < tol};
}

void write_report_csv(std::ostream& os, const OracleReport& r) {
  os << "oracle,max_error,tolerance,passed\n";
  os << "-,-,-,-\n";
  os << r.name << ',' << format_number(r.max_error) << ',' << format_number(r.tolerance) << ','
     << (r.passed ? 1 : 0) << '\n';
}

void write_report_json(std::ostream& os, const OracleReport& r, const nlohmann::json& config) {
  nlohmann::ordered_json doc;
  doc["config"] = config;
  doc["oracle"] = {{"name", r.name},
                   {"metric", r.metric},
                   {"max_error", r.max_error},
                   {"tolerance", r.tolerance},
                   {"passed", r.passed}};
  os << doc.dump(2) << '\n';
}

}  // namespace wavepkt::cli
