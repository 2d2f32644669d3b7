#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mdnls/symbol.hpp"

namespace mdnls {

enum class ValueType { real, integer, boolean, real_list, symbol };

struct KeySpec {
  std::string_view name;
  ValueType type;
  bool required;
  /// Parsed like a config value when the key is absent. Empty for required keys.
  std::string_view fallback;
  std::string_view doc;
};

using ConfigValue = std::variant<double, long, bool, std::vector<double>, std::string>;

/// Fully validated settings of one subcommand, defaults filled in.
struct RunConfig {
  std::string subcommand;
  std::map<std::string, ConfigValue, std::less<>> values;

  double real(std::string_view key) const;
  long integer(std::string_view key) const;
  bool flag(std::string_view key) const;
  const std::vector<double>& list(std::string_view key) const;
  Symbol symbol() const;
  long seed() const { return integer("seed"); }

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parse or validation failure. `line()` is 0 when the error is not tied to
/// one line of the input.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::size_t line = 0);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::span<const std::string_view> subcommands();
std::span<const KeySpec> schema(std::string_view subcommand);

/// Reads `[section]` headers, `key = value` lines and `#` comments, picks the
/// section named after the subcommand, checks every key against its schema,
/// fills defaults and validates the mathematical hypotheses of the driver.
RunConfig parse_config(std::string_view text, std::string_view subcommand);

/// Canonical text of a resolved config; parsing it back yields an equal
/// RunConfig.
std::string serialize(const RunConfig& config);

}  // namespace mdnls
