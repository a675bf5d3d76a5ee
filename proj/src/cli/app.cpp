#include "cli/app.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/oracle.hpp"
#include "cli/table.hpp"
#include "wavepkt/errors.hpp"

namespace wavepkt::cli {

namespace {

using json = nlohmann::json;

const std::vector<std::pair<std::string, std::string>> kCommands = {
    {"spread", "position variance against time"},
    {"density", "probability density at one time"},
    {"sql", "standard quantum limit against the squeeze parameter"},
    {"decohere", "attenuation of cat-state interference against time"},
    {"oracle", "differential check of a closed form against a numerical solver"},
};

const char* type_name(ParamKind kind) {
  switch (kind) {
    case ParamKind::number: return "FLOAT";
    case ParamKind::length: return "LENGTH";
    case ParamKind::mass: return "MASS";
    case ParamKind::integer: return "INT";
    default: return "TEXT";
  }
}

struct Invocation {
  CLI::App* sub = nullptr;
  std::map<std::string, std::optional<std::string>> text;
  std::map<std::string, CLI::Option*> flags;
  std::string config_path;
  std::string out;
  std::optional<unsigned> threads;
};

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  // Accept a previous run's JSON output and read its config echo.
  if (doc.is_object() && doc.contains("config") && doc.at("config").is_object()) doc = doc.at("config");
  if (!doc.is_object()) throw UsageError("config file must hold a JSON object");
  return doc;
}

Config build_config(const std::string& command, Invocation& inv) {
  const auto& specs = params_for(command);
  json raw = inv.config_path.empty() ? json::object() : load_config_file(inv.config_path);

  Config cfg;
  cfg.command = command;
  if (raw.contains("out")) {
    cfg.out = raw.at("out").get<std::string>();
    raw.erase("out");
  }
  if (raw.contains("threads")) {
    cfg.threads = raw.at("threads").get<unsigned>();
    raw.erase("threads");
  }
  for (const auto& [key, _] : raw.items()) {
    const bool known = std::any_of(specs.begin(), specs.end(), [&](const ParamSpec& s) { return key == s.key; });
    if (!known) throw UsageError("config file: '" + key + "' is not a parameter of " + command);
  }
  for (const auto& [key, value] : inv.text)
    if (value) raw[key] = *value;
  for (const auto& [key, opt] : inv.flags)
    if (opt->count() > 0) raw[key] = true;
  if (!inv.out.empty()) cfg.out = inv.out;
  if (inv.threads) cfg.threads = *inv.threads;

  const UnitMode mode = raw.contains("units") ? parse_units(raw.at("units").get<std::string>()) : UnitMode::natural;
  for (const auto& spec : specs)
    if (raw.contains(spec.key)) cfg.values[spec.key] = coerce(spec, raw.at(spec.key), mode);
  resolve_defaults(cfg);
  return cfg;
}

int emit(const Config& cfg, std::ostream& out, const std::function<void(std::ostream&)>& write) {
  if (cfg.out.empty()) {
    write(out);
    return out ? kOk : kPhysics;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + cfg.out + "'");
  write(file);
  return kOk;
}

int dispatch(Config& cfg, std::ostream& out, std::ostream& err) {
  const bool as_json = cfg.text("format") == "json";
  if (cfg.command == "oracle") {
    const auto report = run_oracle(cfg);
    emit(cfg, out, [&](std::ostream& os) {
      as_json ? write_report_json(os, report, cfg.values) : write_report_csv(os, report);
    });
    if (!report.passed) {
      err << "oracle " << report.name << " failed: " << report.metric << " = "
          << format_number(report.max_error) << " (tolerance " << format_number(report.tolerance) << ")\n";
      return kOracleFailed;
    }
    return kOk;
  }
  CurveTable table;
  if (cfg.command == "spread") table = run_spread(cfg, err);
  else if (cfg.command == "density") table = run_density(cfg, err);
  else if (cfg.command == "sql") table = run_sql(cfg, err);
  else if (cfg.command == "decohere") table = run_decohere(cfg, err);
  else throw UsageError("unknown subcommand '" + cfg.command + "'");
  return emit(cfg, out, [&](std::ostream& os) {
    as_json ? write_json(os, table, cfg.values) : write_csv(os, table);
  });
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Free-particle wave packet spreading, thermal averaging, squeezing and decoherence"};
  app.name("wavepkt");
  app.require_subcommand(1);
  std::map<std::string, Invocation> invocations;
  for (const auto& [name, description] : kCommands) {
    auto& inv = invocations[name];
    inv.sub = app.add_subcommand(name, description);
    for (const auto& spec : params_for(name)) {
      const std::string flag = std::string("--") + spec.key;
      if (spec.kind == ParamKind::flag) {
        inv.flags[spec.key] = inv.sub->add_flag(flag, spec.help);
      } else {
        inv.text[spec.key] = std::nullopt;
        inv.sub->add_option(flag, inv.text[spec.key], spec.help)->type_name(type_name(spec.kind));
      }
    }
    inv.sub->add_option("--config", inv.config_path, "JSON file of parameters; flags take precedence");
    inv.sub->add_option("--out", inv.out, "output path (default: stdout)");
    inv.sub->add_option("--threads", inv.threads, "Monte Carlo worker threads (0: all cores)");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    for (auto& [name, inv] : invocations) {
      if (!inv.sub->parsed()) continue;
      Config cfg = build_config(name, inv);
      return dispatch(cfg, out, err);
    }
    err << "error: no subcommand\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: bad configuration value: " << e.what() << '\n';
    return kUsage;
  } catch (const PhysicsError& e) {
    err << "physics error: " << e.what() << '\n';
    return kPhysics;
  }
}

}  // namespace wavepkt::cli
