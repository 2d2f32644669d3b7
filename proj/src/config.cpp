#include "mdnls/config.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "mdnls/evolution.hpp"
#include "mdnls/experiments.hpp"
#include "mdnls/grid.hpp"
#include "mdnls/scaling.hpp"
#include "text.hpp"

namespace mdnls {

using detail::format_shortest;

namespace {

using enum ValueType;

constexpr std::array<std::string_view, 5> kSubcommands{"simulate", "inflate", "ode-approx", "strichartz", "singular"};

constexpr KeySpec kSimulate[] = {
    {"symbol", symbol, true, "", "dispersion symbol, key(param=value,...)"},
    {"T", real, true, "", "final time"},
    {"d", integer, false, "1", "dimension"},
    {"n", integer, false, "256", "grid points per axis"},
    {"L", real, false, "8", "box half-length"},
    {"lambda", real, false, "1", "nonlinear coupling"},
    {"sigma", real, false, "1", "nonlinearity exponent"},
    {"dt", real, false, "0.001", "time step"},
    {"eps", real, false, "1", "semiclassical parameter"},
    {"snapshot_every", integer, false, "10", "steps between snapshots"},
    {"amplitude", real, false, "1", "initial Gaussian amplitude"},
    {"width", real, false, "1", "initial Gaussian width"},
    {"dealias", boolean, false, "false", "apply the 2/3 rule after each step"},
    {"seed", integer, false, "0", "seed of the homogeneity check"},
};

constexpr KeySpec kInflate[] = {
    {"symbol", symbol, true, "", "dispersion symbol"},
    {"d", integer, true, "", "dimension"},
    {"sigma", real, true, "", "nonlinearity exponent"},
    {"s", real, true, "", "Sobolev index"},
    {"h_list", real_list, true, "", "concentration scales, strictly decreasing"},
    {"lambda", real, false, "1", "nonlinear coupling"},
    {"theta", real, false, "0.05", "kappa exponent"},
    {"delta", real, false, "0.1", "time window exponent"},
    {"omega", real, false, "1", "homogeneous balance exponent"},
    {"n", integer, false, "256", "grid points per axis"},
    {"L", real, false, "8", "box half-length"},
    {"max_phase", real, false, "0.02", "phase per step bound"},
    {"min_steps", integer, false, "64", "minimum steps per run"},
    {"required_growth", real, false, "3", "inflation ratio growth to pass"},
    {"seed", integer, false, "0", "unused"},
};

constexpr KeySpec kOdeApprox[] = {
    {"symbol", symbol, true, "", "dispersion symbol"},
    {"d", integer, true, "", "dimension"},
    {"sigma", real, true, "", "nonlinearity exponent"},
    {"s", real, true, "", "Sobolev index"},
    {"eps_list", real_list, true, "", "semiclassical parameters, strictly decreasing"},
    {"r", integer, true, "", "Sobolev index of the error"},
    {"lambda", real, false, "1", "nonlinear coupling"},
    {"theta", real, false, "0.05", "kappa exponent"},
    {"delta", real, false, "0.1", "time window exponent"},
    {"omega", real, false, "1", "homogeneous balance exponent"},
    {"n", integer, false, "256", "grid points per axis"},
    {"L", real, false, "8", "box half-length"},
    {"max_phase", real, false, "0.02", "phase per step bound"},
    {"min_steps", integer, false, "64", "minimum steps per run"},
    {"zero_dispersion", boolean, false, "false", "drop the symbol (control run)"},
    {"seed", integer, false, "0", "unused"},
};

constexpr KeySpec kStrichartz[] = {
    {"symbol", symbol, true, "", "dispersion symbol"},
    {"p", real, true, "", "time exponent"},
    {"q", real, true, "", "space exponent"},
    {"N_list", real_list, true, "", "probe frequencies, strictly increasing"},
    {"d", integer, false, "1", "dimension"},
    {"k_grid", real_list, false, "0, 0.25, 0.5", "Sobolev indices reported per probe"},
    {"I", real, false, "1", "length of the time interval"},
    {"L", real, false, "16", "box half-length"},
    {"n_ceiling", integer, false, "65536", "maximum grid nodes"},
    {"snapshots_per_octave", integer, false, "64", "time nodes per dyadic level"},
    {"contrast", boolean, false, "true", "run the laplacian contrast and P = 0 calibration"},
    {"margin", real, false, "0.1", "allowed shortfall of k_hat"},
    {"calibration_tolerance", real, false, "0.02", "P = 0 slope tolerance"},
    {"seed", integer, false, "0", "unused"},
};

constexpr KeySpec kSingular[] = {
    {"sigma", real, true, "", "nonlinearity exponent"},
    {"d", integer, false, "2", "dimension, must be 2"},
    {"lambda", real, false, "1", "nonlinear coupling"},
    {"t", real, false, "1", "evaluation time"},
    {"delta_amp", real, false, "1", "profile amplitude"},
    {"rho_list", real_list, false, "1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10, 1e-11, 1e-12",
     "inner radii, strictly decreasing"},
    {"tol", real, false, "1e-9", "quadrature relative tolerance"},
    {"seed", integer, false, "0", "unused"},
};

std::string type_name(ValueType t) {
  switch (t) {
    case real:
      return "a real number";
    case integer:
      return "an integer";
    case boolean:
      return "true or false";
    case real_list:
      return "a comma-separated list of reals";
    case symbol:
      return "a symbol key(param=value,...)";
  }
  return "?";
}

ConfigValue parse_value(const KeySpec& spec, std::string_view text) {
  switch (spec.type) {
    case real:
      return detail::parse_double(text);
    case integer: {
      const double v = detail::parse_double(text);
      if (v != std::floor(v) || std::abs(v) > 9.0e15) throw std::invalid_argument("not an integer");
      return static_cast<long>(v);
    }
    case boolean:
      if (text == "true" || text == "1" || text == "yes") return true;
      if (text == "false" || text == "0" || text == "no") return false;
      throw std::invalid_argument("not a boolean");
    case real_list: {
      std::vector<double> out;
      for (auto part : detail::split(text, ',')) out.push_back(detail::parse_double(detail::trim(part)));
      return out;
    }
    case symbol:
      return parse_symbol(text).name();
  }
  throw std::invalid_argument("unknown type");
}

struct RawEntry {
  std::string value;
  std::size_t line;
};

struct RawSection {
  std::size_t line = 0;
  std::map<std::string, RawEntry, std::less<>> entries;
};

std::map<std::string, RawSection, std::less<>> read_sections(std::string_view text) {
  std::map<std::string, RawSection, std::less<>> sections;
  RawSection* current = nullptr;
  std::size_t lineno = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", lineno);
      const std::string name(detail::trim(line.substr(1, line.size() - 2)));
      bool known = false;
      for (auto s : kSubcommands) known = known || s == name;
      if (!known) throw ConfigError("unknown section [" + name + "]", lineno);
      auto [it, fresh] = sections.try_emplace(name);
      if (!fresh) throw ConfigError("duplicate section [" + name + "]", lineno);
      it->second.line = lineno;
      current = &it->second;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected key = value", lineno);
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string value(detail::trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("missing key before '='", lineno);
    if (value.empty()) throw ConfigError("missing value for key '" + key + "'", lineno);
    if (!current) throw ConfigError("key '" + key + "' appears before any [section]", lineno);
    if (!current->entries.try_emplace(key, RawEntry{value, lineno}).second) {
      throw ConfigError("duplicate key '" + key + "'", lineno);
    }
  }
  return sections;
}

// Per-key line numbers let semantic errors point at their source.
struct Lines {
  const std::map<std::string, RawEntry, std::less<>>* entries;
  std::size_t at(std::string_view key) const {
    auto it = entries->find(key);
    return it == entries->end() ? 0 : it->second.line;
  }
};

[[noreturn]] void fail(const Lines& lines, std::string_view key, const std::string& message) {
  throw ConfigError(std::string(key) + ": " + message, lines.at(key));
}

void require_grid(const RunConfig& c, const Lines& lines) {
  const long d = c.integer("d");
  if (d != 1 && d != 2) fail(lines, "d", "d must be 1 or 2");
  if (c.values.contains("n")) {
    const long n = c.integer("n");
    if (n < 8 || !is_power_of_two(static_cast<std::size_t>(n))) fail(lines, "n", "n must be a power of two >= 8");
  }
  if (c.values.contains("L") && !(c.real("L") > 0.0 && std::isfinite(c.real("L")))) {
    fail(lines, "L", "L must be finite and > 0");
  }
}

void require_positive(const RunConfig& c, const Lines& lines, std::string_view key) {
  const double v = c.real(key);
  if (!(v > 0.0 && std::isfinite(v))) fail(lines, key, "must be finite and > 0");
}

void require_monotone(const RunConfig& c, const Lines& lines, std::string_view key, bool increasing) {
  const auto& v = c.list(key);
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (increasing ? !(v[i] > v[i - 1]) : !(v[i] < v[i - 1])) {
      fail(lines, key, std::string("entries must be strictly ") + (increasing ? "increasing" : "decreasing"));
    }
  }
}

ScalingPlan require_scaling(const RunConfig& c, const Lines& lines) {
  const Symbol P = c.symbol();
  try {
    if (P.kind() == SymbolKind::odd_power_1d && c.integer("d") != 1) {
      throw std::invalid_argument("odd_power_1d is defined for d = 1 only");
    }
    return compute_scaling(static_cast<int>(c.integer("d")), c.real("sigma"), c.real("s"), P.symbol_class(),
                           c.real("omega"), c.real("theta"), c.real("delta"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what(), lines.at("s"));
  }
}

void validate_semantics(const RunConfig& c, const Lines& lines) {
  const std::string& sub = c.subcommand;
  if (sub == "simulate") {
    require_grid(c, lines);
    if (!(c.real("T") >= 0.0 && std::isfinite(c.real("T")))) fail(lines, "T", "must be finite and >= 0");
    require_positive(c, lines, "dt");
    require_positive(c, lines, "sigma");
    require_positive(c, lines, "width");
    const double eps = c.real("eps");
    if (!(eps > 0.0 && eps <= 1.0)) fail(lines, "eps", "must lie in (0, 1]");
    if (c.integer("snapshot_every") < 1) fail(lines, "snapshot_every", "must be >= 1");
    if (c.symbol().kind() == SymbolKind::odd_power_1d && c.integer("d") != 1) {
      fail(lines, "symbol", "odd_power_1d is defined for d = 1 only");
    }
  } else if (sub == "inflate") {
    require_grid(c, lines);
    const auto plan = require_scaling(c, lines);
    if (!sigma_admissible(plan.sigma, plan.dim)) {
      fail(lines, "sigma", "sigma must be an integer or satisfy 2 sigma >= r > d/2 for some integer r "
                           "(norm-inflation hypothesis)");
    }
    const auto& h = c.list("h_list");
    if (h.empty()) fail(lines, "h_list", "must not be empty");
    for (double x : h) {
      if (!(x > 0.0) || x > max_concentration_scale()) {
        fail(lines, "h_list", "h = " + format_shortest(x) + " must lie in (0, e^-1]");
      }
    }
    require_monotone(c, lines, "h_list", false);
    require_positive(c, lines, "max_phase");
    if (c.integer("min_steps") < 1) fail(lines, "min_steps", "must be >= 1");
  } else if (sub == "ode-approx") {
    require_grid(c, lines);
    const auto plan = require_scaling(c, lines);
    const long r = c.integer("r");
    if (!(r > 0.5 * plan.dim)) fail(lines, "r", "r must satisfy r > d/2 (ODE-approximation hypothesis)");
    if (plan.sigma != std::floor(plan.sigma) && r > 2.0 * plan.sigma) {
      fail(lines, "r", "r <= 2 sigma required for non-integer sigma (ODE-approximation hypothesis)");
    }
    const auto& eps = c.list("eps_list");
    if (eps.empty()) fail(lines, "eps_list", "must not be empty");
    for (double e : eps) {
      if (!(e > 0.0 && e < 1.0)) fail(lines, "eps_list", "eps = " + format_shortest(e) + " must lie in (0, 1)");
      if (plan.h_from_eps(e) > max_concentration_scale()) {
        fail(lines, "eps_list", "eps = " + format_shortest(e) + " gives h = " + format_shortest(plan.h_from_eps(e)) +
                                    " outside (0, e^-1]");
      }
    }
    require_monotone(c, lines, "eps_list", false);
    require_positive(c, lines, "max_phase");
    if (c.integer("min_steps") < 1) fail(lines, "min_steps", "must be >= 1");
  } else if (sub == "strichartz") {
    require_grid(c, lines);
    const double p = c.real("p");
    const double q = c.real("q");
    if (!admissible_pair(static_cast<int>(c.integer("d")), p, q)) {
      fail(lines, "p", "(p, q) = (" + format_shortest(p) + ", " + format_shortest(q) +
                           ") is not admissible: need 2 < p, 2 <= q, 2/p = d(1/2 - 1/q)");
    }
    const auto& N = c.list("N_list");
    if (N.size() < 2) fail(lines, "N_list", "needs at least two frequencies");
    for (double x : N) {
      if (!(x >= 1.0 && std::isfinite(x))) fail(lines, "N_list", "entries must be finite and >= 1");
    }
    require_monotone(c, lines, "N_list", true);
    if (c.list("k_grid").empty()) fail(lines, "k_grid", "must not be empty");
    require_positive(c, lines, "I");
    if (c.integer("n_ceiling") < 8) fail(lines, "n_ceiling", "must be >= 8");
    if (c.integer("snapshots_per_octave") < 1) fail(lines, "snapshots_per_octave", "must be >= 1");
    if (!(c.real("margin") >= 0.0)) fail(lines, "margin", "must be >= 0");
    require_positive(c, lines, "calibration_tolerance");
  } else if (sub == "singular") {
    if (c.integer("d") != 2) fail(lines, "d", "the log-singular probe is defined for d = 2 only");
    require_positive(c, lines, "sigma");
    if (!(c.real("t") >= 0.0 && std::isfinite(c.real("t")))) fail(lines, "t", "must be finite and >= 0");
    require_positive(c, lines, "delta_amp");
    require_positive(c, lines, "tol");
    if (!std::isfinite(c.real("lambda"))) fail(lines, "lambda", "must be finite");
    const auto& rho = c.list("rho_list");
    if (rho.size() < 3) fail(lines, "rho_list", "needs at least three radii");
    for (double x : rho) {
      if (!(x > 0.0 && x < 0.5)) fail(lines, "rho_list", "entries must lie in (0, 1/2)");
    }
    require_monotone(c, lines, "rho_list", false);
  }
  if (c.values.contains("lambda") && !std::isfinite(c.real("lambda"))) fail(lines, "lambda", "must be finite");
}

template <typename T>
const T& get(const RunConfig& c, std::string_view key) {
  auto it = c.values.find(key);
  if (it == c.values.end()) throw std::out_of_range("config has no key '" + std::string(key) + "'");
  if (const auto* v = std::get_if<T>(&it->second)) return *v;
  throw std::invalid_argument("config key '" + std::string(key) + "' has a different type");
}

std::string render(const ConfigValue& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_shortest(x);
        } else if constexpr (std::is_same_v<T, long>) {
          return std::to_string(x);
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::vector<double>>) {
          std::string out;
          for (std::size_t i = 0; i < x.size(); ++i) out += (i ? ", " : "") + format_shortest(x[i]);
          return out;
        } else {
          return x;
        }
      },
      v);
}

}  // namespace

ConfigError::ConfigError(const std::string& what, std::size_t line)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

double RunConfig::real(std::string_view key) const { return get<double>(*this, key); }
long RunConfig::integer(std::string_view key) const { return get<long>(*this, key); }
bool RunConfig::flag(std::string_view key) const { return get<bool>(*this, key); }
const std::vector<double>& RunConfig::list(std::string_view key) const { return get<std::vector<double>>(*this, key); }
Symbol RunConfig::symbol() const { return parse_symbol(get<std::string>(*this, "symbol")); }

std::span<const std::string_view> subcommands() { return kSubcommands; }

std::span<const KeySpec> schema(std::string_view subcommand) {
  if (subcommand == "simulate") return kSimulate;
  if (subcommand == "inflate") return kInflate;
  if (subcommand == "ode-approx") return kOdeApprox;
  if (subcommand == "strichartz") return kStrichartz;
  if (subcommand == "singular") return kSingular;
  throw std::invalid_argument("unknown subcommand '" + std::string(subcommand) + "'");
}

RunConfig parse_config(std::string_view text, std::string_view subcommand) {
  const auto keys = schema(subcommand);
  const auto sections = read_sections(text);
  const auto found = sections.find(subcommand);
  if (found == sections.end()) throw ConfigError("config has no [" + std::string(subcommand) + "] section");
  const RawSection& section = found->second;

  RunConfig config;
  config.subcommand = std::string(subcommand);
  for (const auto& [key, entry] : section.entries) {
    const KeySpec* spec = nullptr;
    for (const auto& k : keys) {
      if (k.name == key) spec = &k;
    }
    if (!spec) throw ConfigError("unknown key '" + key + "' for [" + config.subcommand + "]", entry.line);
    try {
      config.values.emplace(key, parse_value(*spec, entry.value));
    } catch (const std::exception& e) {
      throw ConfigError("key '" + key + "' must be " + type_name(spec->type) + " (got '" + entry.value +
                            "': " + e.what() + ")",
                        entry.line);
    }
  }

  std::string missing;
  for (const auto& k : keys) {
    if (config.values.contains(k.name)) continue;
    if (k.required) {
      missing += (missing.empty() ? "" : ", ") + std::string(k.name);
    } else {
      config.values.emplace(std::string(k.name), parse_value(k, k.fallback));
    }
  }
  if (!missing.empty()) {
    throw ConfigError("[" + config.subcommand + "] is missing required keys: " + missing, section.line);
  }

  validate_semantics(config, Lines{&section.entries});
  return config;
}

std::string serialize(const RunConfig& config) {
  std::string out = "[" + config.subcommand + "]\n";
  for (const auto& k : schema(config.subcommand)) {
    auto it = config.values.find(k.name);
    if (it == config.values.end()) continue;
    out += std::string(k.name) + " = " + render(it->second) + "\n";
  }
  return out;
}

}  // namespace mdnls
