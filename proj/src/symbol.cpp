#include "mdnls/symbol.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <tuple>

#include "text.hpp"

namespace mdnls {
namespace {

constexpr std::array<std::string_view, 10> kKeys = {
    "laplacian", "fourth_order", "power_m",               "odd_power_1d", "transport",
    "constant",  "arctan_step",  "regularized_laplacian", "wave",         "directional_m",
};

struct KindInfo {
  SymbolKind kind;
  std::vector<std::string_view> allowed;
};

KindInfo lookup(std::string_view key) {
  if (key == "laplacian") return {SymbolKind::laplacian, {}};
  if (key == "fourth_order") return {SymbolKind::fourth_order, {}};
  if (key == "power_m") return {SymbolKind::power_m, {"m", "mu"}};
  if (key == "odd_power_1d") return {SymbolKind::odd_power_1d, {"j"}};
  if (key == "transport") return {SymbolKind::transport, {"c", "c2"}};
  if (key == "constant") return {SymbolKind::constant, {"c"}};
  if (key == "arctan_step") return {SymbolKind::arctan_step, {"h"}};
  if (key == "regularized_laplacian") return {SymbolKind::regularized_laplacian, {}};
  if (key == "wave") return {SymbolKind::wave, {}};
  if (key == "directional_m") return {SymbolKind::directional_m, {"m", "c", "c2"}};
  throw std::invalid_argument("unknown symbol '" + std::string(key) + "'");
}

double param_or(const SymbolParams& p, std::string_view name, double fallback) {
  auto it = p.find(name);
  return it == p.end() ? fallback : it->second;
}

double require_param(const SymbolParams& p, std::string_view key, std::string_view name) {
  auto it = p.find(name);
  if (it == p.end()) {
    throw std::invalid_argument("symbol " + std::string(key) + " requires parameter '" +
                                std::string(name) + "'");
  }
  return it->second;
}

}  // namespace

struct Symbol::Impl {
  std::string key;
  SymbolKind kind;
  SymbolParams params;
  SymbolClass cls;
  double amplitude = 1.0;
  double inner = 1.0;

  double m = 0.0;
  double mu = 1.0;
  int odd_power = 1;
  std::array<double, 2> c{0.0, 0.0};
  double h = 1.0;

  mutable std::mutex cache_mutex;
  mutable std::map<std::tuple<int, std::size_t, double>, std::shared_ptr<const std::vector<double>>>
      cache;

  Impl() = default;
  Impl(const Impl& other)
      : key(other.key),
        kind(other.kind),
        params(other.params),
        cls(other.cls),
        amplitude(other.amplitude),
        inner(other.inner),
        m(other.m),
        mu(other.mu),
        odd_power(other.odd_power),
        c(other.c),
        h(other.h) {}

  double base(double x0, double x1) const {
    const double r2 = x0 * x0 + x1 * x1;
    switch (kind) {
      case SymbolKind::laplacian:
        return -r2;
      case SymbolKind::fourth_order:
        return r2 * r2;
      case SymbolKind::power_m:
        return mu * std::pow(std::sqrt(r2), m);
      case SymbolKind::odd_power_1d:
        return std::pow(x0, odd_power);
      case SymbolKind::transport:
        return c[0] * x0 + c[1] * x1;
      case SymbolKind::constant:
        return c[0];
      case SymbolKind::arctan_step:
        return -std::atan(h * r2) / h;
      case SymbolKind::regularized_laplacian:
        return -r2 / (1.0 + r2);
      case SymbolKind::wave:
        return std::sqrt(r2);
      case SymbolKind::directional_m: {
        const double dot = c[0] * x0 + c[1] * x1;
        if (m == 1.0) return dot;
        return std::pow(std::sqrt(r2), m - 1.0) * dot;
      }
    }
    return 0.0;
  }

  double eval(double x0, double x1) const { return amplitude * base(inner * x0, inner * x1); }
};

Symbol::Symbol(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

std::string_view Symbol::key() const { return impl_->key; }
SymbolKind Symbol::kind() const { return impl_->kind; }
const SymbolParams& Symbol::params() const { return impl_->params; }
const SymbolClass& Symbol::symbol_class() const { return impl_->cls; }
double Symbol::amplitude() const { return impl_->amplitude; }
double Symbol::inner_scale() const { return impl_->inner; }

std::string Symbol::name() const {
  std::string out(impl_->key);
  if (!impl_->params.empty()) {
    out += '(';
    bool first = true;
    for (const auto& [k, v] : impl_->params) {
      if (!first) out += ',';
      first = false;
      out += k;
      out += '=';
      out += detail::format_shortest(v);
    }
    out += ')';
  }
  if (impl_->amplitude != 1.0 || impl_->inner != 1.0) {
    out = detail::format_shortest(impl_->amplitude) + "*" + out + "[xi*" +
          detail::format_shortest(impl_->inner) + "]";
  }
  return out;
}

double Symbol::operator()(std::span<const double> xi) const {
  if (xi.empty() || xi.size() > 2) throw std::invalid_argument("frequency must have 1 or 2 components");
  return impl_->eval(xi[0], xi.size() == 2 ? xi[1] : 0.0);
}

double Symbol::operator()(double xi) const { return impl_->eval(xi, 0.0); }

Symbol Symbol::rescaled(double amplitude, double inner) const {
  if (!std::isfinite(amplitude) || !std::isfinite(inner) || inner <= 0.0) {
    throw std::invalid_argument("rescaling needs a finite amplitude and a positive inner scale");
  }
  auto impl = std::make_shared<Impl>(*impl_);
  impl->amplitude *= amplitude;
  impl->inner *= inner;
  if (auto* b = std::get_if<Bounded>(&impl->cls)) b->bound *= std::abs(amplitude);
  return Symbol(std::move(impl));
}

std::shared_ptr<const std::vector<double>> Symbol::on_lattice(const Grid& grid) const {
  if (impl_->kind == SymbolKind::odd_power_1d && grid.dim() != 1) {
    throw std::invalid_argument("odd_power_1d is only defined for d = 1");
  }
  const auto key = std::make_tuple(grid.dim(), grid.points(), grid.half_length());
  std::lock_guard lock(impl_->cache_mutex);
  if (auto it = impl_->cache.find(key); it != impl_->cache.end()) return it->second;

  auto values = std::make_shared<std::vector<double>>(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto xi = grid.frequency_vector(i);
    const double p = impl_->eval(xi[0], xi[1]);
    if (!std::isfinite(p)) {
      std::string where = "(" + detail::format_shortest(xi[0]);
      if (grid.dim() == 2) where += ", " + detail::format_shortest(xi[1]);
      where += ")";
      throw std::domain_error("symbol " + name() + " is not finite at xi = " + where);
    }
    (*values)[i] = p;
  }
  std::shared_ptr<const std::vector<double>> frozen = std::move(values);
  impl_->cache.emplace(key, frozen);
  return frozen;
}

Symbol make_symbol(std::string_view key, const SymbolParams& params) {
  const auto info = lookup(key);
  for (const auto& [name, value] : params) {
    if (std::find(info.allowed.begin(), info.allowed.end(), name) == info.allowed.end()) {
      throw std::invalid_argument("symbol " + std::string(key) + " has no parameter '" + name + "'");
    }
    if (!std::isfinite(value)) {
      throw std::invalid_argument("symbol parameter '" + name + "' must be finite");
    }
  }

  auto impl = std::make_shared<Symbol::Impl>();
  impl->key = std::string(key);
  impl->kind = info.kind;
  impl->params = params;

  switch (info.kind) {
    case SymbolKind::laplacian:
      impl->cls = Homogeneous{2.0};
      break;
    case SymbolKind::fourth_order:
      impl->cls = Homogeneous{4.0};
      break;
    case SymbolKind::power_m:
      impl->m = require_param(params, key, "m");
      impl->mu = param_or(params, "mu", 1.0);
      if (impl->m < 1.0) throw std::invalid_argument("power_m requires m >= 1");
      impl->cls = Homogeneous{impl->m};
      break;
    case SymbolKind::odd_power_1d: {
      const double j = param_or(params, "j", 1.0);
      if (j < 0.0 || j != std::floor(j)) {
        throw std::invalid_argument("odd_power_1d requires a non-negative integer j");
      }
      impl->odd_power = 2 * static_cast<int>(j) + 1;
      impl->cls = Homogeneous{static_cast<double>(impl->odd_power)};
      break;
    }
    case SymbolKind::transport:
      impl->c = {require_param(params, key, "c"), param_or(params, "c2", 0.0)};
      impl->cls = Homogeneous{1.0};
      break;
    case SymbolKind::constant:
      impl->c = {param_or(params, "c", 0.0), 0.0};
      impl->cls = Bounded{std::abs(impl->c[0])};
      break;
    case SymbolKind::arctan_step:
      impl->h = require_param(params, key, "h");
      if (!(impl->h > 0.0)) throw std::invalid_argument("arctan_step requires h > 0");
      impl->cls = Bounded{std::numbers::pi / (2.0 * impl->h)};
      break;
    case SymbolKind::regularized_laplacian:
      impl->cls = Bounded{1.0};
      break;
    case SymbolKind::wave:
      impl->cls = Homogeneous{1.0};
      break;
    case SymbolKind::directional_m:
      impl->m = require_param(params, key, "m");
      if (impl->m < 1.0) throw std::invalid_argument("directional_m requires m >= 1");
      impl->c = {param_or(params, "c", 1.0), param_or(params, "c2", 0.0)};
      impl->cls = Homogeneous{impl->m};
      break;
  }
  return Symbol(std::move(impl));
}

Symbol parse_symbol(std::string_view text) {
  const auto trimmed = detail::trim(text);
  const auto open = trimmed.find('(');
  if (open == std::string_view::npos) return make_symbol(trimmed);
  if (trimmed.back() != ')') throw std::invalid_argument("symbol '" + std::string(trimmed) + "' is missing ')'");

  const auto key = detail::trim(trimmed.substr(0, open));
  const auto body = trimmed.substr(open + 1, trimmed.size() - open - 2);
  SymbolParams params;
  if (!detail::trim(body).empty()) {
    for (auto item : detail::split(body, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw std::invalid_argument("symbol parameter '" + std::string(detail::trim(item)) +
                                    "' must be name=value");
      }
      const auto name = std::string(detail::trim(item.substr(0, eq)));
      const double value = detail::parse_double(detail::trim(item.substr(eq + 1)));
      if (!params.emplace(name, value).second) {
        throw std::invalid_argument("symbol parameter '" + name + "' given twice");
      }
    }
  }
  return make_symbol(key, params);
}

std::span<const std::string_view> symbol_keys() { return kKeys; }

HomogeneityReport verify_homogeneity(const Symbol& symbol, double degree, int trials, int dim,
                                     std::uint64_t seed) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("dimension must be 1 or 2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  constexpr std::array<double, 3> scales = {0.5, 2.0, 3.0};

  HomogeneityReport report;
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    std::array<double, 2> xi{coord(rng), dim == 2 ? coord(rng) : 0.0};
    const double mu = scales[static_cast<std::size_t>(t) % scales.size()];
    std::array<double, 2> scaled{mu * xi[0], mu * xi[1]};
    const auto n = static_cast<std::size_t>(dim);
    const double lhs = symbol(std::span<const double>(scaled.data(), n));
    const double rhs = std::pow(mu, degree) * symbol(std::span<const double>(xi.data(), n));
    const double denom = std::max(std::abs(lhs), std::abs(rhs));
    const double dev = denom == 0.0 ? 0.0 : std::abs(lhs - rhs) / denom;
    report.max_relative_deviation = std::max(report.max_relative_deviation, dev);
  }
  report.pass = report.max_relative_deviation <= 1e-10;
  return report;
}

}  // namespace mdnls
