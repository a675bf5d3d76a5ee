#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "wavepkt/units.hpp"

namespace wavepkt::cli {

/// Malformed command line or configuration file. Maps to exit status 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ParamKind { number, length, mass, integer, text, flag };

struct ParamSpec {
  const char* key;
  ParamKind kind;
  const char* help;
};

/// Parameters accepted by `command`, common ones included.
const std::vector<ParamSpec>& params_for(const std::string& command);

/// Fully resolved settings for one invocation.
///
/// `values` holds every parameter after defaults, file values and flags have
/// been merged; it is echoed verbatim into JSON output. Execution-only
/// settings that cannot change the result live outside it.
struct Config {
  std::string command;
  nlohmann::json values = nlohmann::json::object();
  std::string out;
  unsigned threads = 0;

  UnitMode units() const;
  double number(const char* key) const;
  std::uint64_t integer(const char* key) const;
  std::string text(const char* key) const;
  bool flag(const char* key) const;
  bool has(const char* key) const;
};

/// Converts a raw parameter value (flag text or JSON value) to its canonical
/// JSON form. Lengths accept an Angstrom suffix ("0.4A") and masses accept
/// "electron" when `mode` is cgs.
nlohmann::json coerce(const ParamSpec& spec, const nlohmann::json& raw, UnitMode mode);

/// Fills every unspecified parameter of `cfg` with its documented default.
void resolve_defaults(Config& cfg);

UnitMode parse_units(const std::string& text);

}  // namespace wavepkt::cli
