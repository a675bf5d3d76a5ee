#include "cli/config.hpp"

#include <charconv>
#include <cmath>
#include <map>

#include "wavepkt/decoherence.hpp"
#include "wavepkt/gaussian.hpp"
#include "wavepkt/propagator.hpp"
#include "wavepkt/thermal.hpp"

namespace wavepkt::cli {

namespace {

using json = nlohmann::json;
using K = ParamKind;

const std::vector<ParamSpec> kCommon = {
    {"units", K::text, "unit system: cgs or natural"},
    {"format", K::text, "output format: csv or json"},
    {"seed", K::integer, "Monte Carlo seed"},
    {"samples", K::integer, "Monte Carlo sample count"},
    {"log", K::flag, "logarithmic sweep grid"},
    {"gamma", K::number, "decay rate for the dissipationless regime check (0 disables)"},
};

const std::vector<ParamSpec> kPacket = {
    {"mass", K::mass, "particle mass"},
    {"sigma", K::length, "initial width"},
    {"x0", K::length, "initial center"},
    {"v0", K::number, "mean velocity"},
    {"squeeze", K::number, "squeeze parameter C"},
    {"temperature", K::number, "temperature (0 for a pure state)"},
};

std::vector<ParamSpec> join(std::initializer_list<std::vector<ParamSpec>> parts) {
  std::vector<ParamSpec> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

const std::map<std::string, std::vector<ParamSpec>>& table() {
  static const std::map<std::string, std::vector<ParamSpec>> t = {
      {"spread", join({kCommon, kPacket,
                       {{"t-min", K::number, "first time"},
                        {"t-max", K::number, "last time (default: ten doubling times)"},
                        {"points", K::integer, "number of rows"}}})},
      {"density", join({kCommon, kPacket,
                        {{"t", K::number, "evaluation time (default: doubling time)"},
                         {"cat", K::flag, "two-packet superposition at +-separation/2"},
                         {"separation", K::length, "cat separation"},
                         {"x-min", K::length, "first x (default: auto)"},
                         {"x-max", K::length, "last x (default: auto)"},
                         {"points", K::integer, "number of rows"}}})},
      {"sql", join({kCommon,
                    {{"mass", K::mass, "particle mass"},
                     {"interval", K::number, "time between measurements"},
                     {"c-min", K::number, "first squeeze parameter"},
                     {"c-max", K::number, "last squeeze parameter"},
                     {"points", K::integer, "number of rows"}}})},
      {"decohere", join({kCommon,
                         {{"mass", K::mass, "particle mass"},
                          {"sigma", K::length, "packet width"},
                          {"separation", K::length, "cat separation"},
                          {"temperature", K::number, "temperature"},
                          {"t-min", K::number, "first time"},
                          {"t-max", K::number, "last time (default: three decoherence times)"},
                          {"points", K::integer, "number of rows"}}})},
      {"oracle", join({kCommon, kPacket,
                       {{"name", K::text,
                         "spectral-vs-analytic, kernel-vs-spectral, mc-vs-closed-form, "
                         "minimize-vs-analytic or moments-vs-field"},
                        {"tolerance", K::number, "pass threshold (default depends on the oracle)"},
                        {"t", K::number, "evolution time or measurement interval"},
                        {"grid-n", K::integer, "grid points"},
                        {"grid-min", K::length, "grid start (default: auto)"},
                        {"grid-max", K::length, "grid end (default: auto)"}}})},
  };
  return t;
}

double parse_double(const std::string& text, const char* key) {
  double v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw UsageError(std::string("invalid number for --") + key + ": '" + text + "'");
  return v;
}

std::uint64_t to_count(double v, const char* key) {
  if (!(v >= 0) || v != std::floor(v) || v > 9007199254740992.0)
    throw UsageError(std::string("--") + key + " must be a non-negative integer");
  return static_cast<std::uint64_t>(v);
}

void set_default(json& values, const char* key, const json& value) {
  if (!values.contains(key)) values[key] = value;
}

}  // namespace

const std::vector<ParamSpec>& params_for(const std::string& command) {
  const auto& t = table();
  auto it = t.find(command);
  if (it == t.end()) throw UsageError("unknown subcommand '" + command + "'");
  return it->second;
}

UnitMode parse_units(const std::string& text) {
  if (text == "cgs") return UnitMode::cgs;
  if (text == "natural") return UnitMode::natural;
  throw UsageError("--units must be cgs or natural, got '" + text + "'");
}

json coerce(const ParamSpec& spec, const json& raw, UnitMode mode) {
  const char* key = spec.key;
  switch (spec.kind) {
    case K::flag:
      if (!raw.is_boolean()) throw UsageError(std::string(key) + " must be a boolean");
      return raw;
    case K::text:
      if (!raw.is_string()) throw UsageError(std::string(key) + " must be a string");
      return raw;
    case K::integer: {
      if (raw.is_number_unsigned()) return raw;
      double v = 0;
      if (raw.is_number()) v = raw.get<double>();
      else if (raw.is_string()) {
        const auto s = raw.get<std::string>();
        std::uint64_t u = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), u);
        if (ec == std::errc() && ptr == s.data() + s.size()) return u;
        v = parse_double(s, key);
      } else {
        throw UsageError(std::string(key) + " must be an integer");
      }
      return to_count(v, key);
    }
    case K::number:
    case K::length:
    case K::mass: {
      if (raw.is_number()) {
        const double v = raw.get<double>();
        if (!std::isfinite(v)) throw UsageError(std::string(key) + " must be finite");
        return v;
      }
      if (!raw.is_string()) throw UsageError(std::string(key) + " must be a number");
      std::string s = raw.get<std::string>();
      if (spec.kind == K::mass && s == "electron") {
        if (mode != UnitMode::cgs) throw UsageError("mass 'electron' requires --units cgs");
        return cgs::electron_mass;
      }
      if (spec.kind == K::length && !s.empty() && s.back() == 'A') {
        if (mode != UnitMode::cgs) throw UsageError("Angstrom lengths require --units cgs");
        s.pop_back();
        return parse_double(s, key) * cgs::angstrom;
      }
      return parse_double(s, key);
    }
  }
  throw UsageError("unhandled parameter kind");
}

UnitMode Config::units() const { return parse_units(values.at("units").get<std::string>()); }

bool Config::has(const char* key) const { return values.contains(key); }

double Config::number(const char* key) const {
  if (!values.contains(key)) throw UsageError(std::string("missing parameter --") + key);
  return values.at(key).get<double>();
}

std::uint64_t Config::integer(const char* key) const {
  if (!values.contains(key)) throw UsageError(std::string("missing parameter --") + key);
  return values.at(key).get<std::uint64_t>();
}

std::string Config::text(const char* key) const {
  if (!values.contains(key)) throw UsageError(std::string("missing parameter --") + key);
  return values.at(key).get<std::string>();
}

bool Config::flag(const char* key) const { return values.contains(key) && values.at(key).get<bool>(); }

void resolve_defaults(Config& cfg) {
  json& v = cfg.values;
  set_default(v, "units", "natural");
  const UnitMode mode = cfg.units();
  const bool cgs_mode = mode == UnitMode::cgs;
  const auto c = constants_for(mode);
  set_default(v, "format", "csv");
  const auto format = v.at("format").get<std::string>();
  if (format != "csv" && format != "json")
    throw UsageError("--format must be csv or json, got '" + format + "'");
  set_default(v, "seed", std::uint64_t{42});
  set_default(v, "samples", std::uint64_t{100000});
  set_default(v, "log", false);
  set_default(v, "gamma", 0.0);

  const auto& specs = params_for(cfg.command);
  auto accepts = [&](const char* key) {
    for (const auto& s : specs)
      if (std::string(s.key) == key) return true;
    return false;
  };
  auto def = [&](const char* key, const json& value) {
    if (accepts(key)) set_default(v, key, value);
  };

  def("mass", cgs_mode ? cgs::electron_mass : 1.0);
  def("sigma", cgs_mode ? 0.4 * cgs::angstrom : 1.0);
  def("x0", 0.0);
  def("v0", 0.0);
  def("squeeze", 0.0);
  def("temperature", cgs_mode ? 300.0 : 1.0);
  def("separation", cgs_mode ? 1.0 : 3.0);
  def("cat", false);
  def("interval", cgs_mode ? 1e-15 : 1.0);
  def("c-min", -10.0);
  def("c-max", 10.0);
  def("t-min", 0.0);
  def("grid-n", std::uint64_t{4096});

  const std::string& cmd = cfg.command;
  def("points", std::uint64_t{cmd == "density" ? 401u : cmd == "sql" ? 21u : 101u});

  GaussianPacket<double> packet;
  if (accepts("sigma")) {
    packet.mass = v.at("mass").get<double>();
    packet.sigma = v.at("sigma").get<double>();
    if (accepts("x0")) {
      packet.x0 = v.at("x0").get<double>();
      packet.v0 = v.at("v0").get<double>();
      packet.squeeze = v.at("squeeze").get<double>();
    }
    validate(packet);
  }
  const double doubling = accepts("sigma") ? 2 * packet.mass * packet.sigma * packet.sigma / c.hbar : 0.0;

  if (cmd == "spread") def("t-max", 10 * doubling);
  if (cmd == "density") {
    def("t", doubling);
    const double t = v.at("t").get<double>();
    const ThermalScenario<double> s{packet, v.at("temperature").get<double>()};
    validate(s);
    const double width = std::sqrt(thermal_variance(s, t, c));
    double lo = packet.x0 + packet.v0 * t - 10 * width;
    double hi = packet.x0 + packet.v0 * t + 10 * width;
    if (v.at("cat").get<bool>()) {
      const double half = v.at("separation").get<double>() / 2;
      lo = -half - 10 * width;
      hi = half + 10 * width;
    }
    def("x-min", lo);
    def("x-max", hi);
  }
  if (cmd == "decohere") {
    const CatScenario<double> s{packet.sigma, v.at("separation").get<double>(), packet.mass,
                                v.at("temperature").get<double>()};
    const double tau = decoherence_time(s, c);
    def("t-max", std::isinf(tau) ? 10 * doubling : 3 * tau);
  }
  if (cmd == "oracle") {
    if (!v.contains("name")) throw UsageError("oracle requires --name");
    def("t", doubling / 2);
  }
}

}  // namespace wavepkt::cli
