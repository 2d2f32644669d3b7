#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mdnls/grid.hpp"

namespace mdnls {

/// P(mu xi) = mu^m P(xi) for all mu > 0.
struct Homogeneous {
  double degree;
};

/// sup |P| <= bound.
struct Bounded {
  double bound;
};

using SymbolClass = std::variant<Homogeneous, Bounded>;

enum class SymbolKind {
  laplacian,
  fourth_order,
  power_m,
  odd_power_1d,
  transport,
  constant,
  arctan_step,
  regularized_laplacian,
  wave,
  directional_m,
};

using SymbolParams = std::map<std::string, double, std::less<>>;

/// A real Fourier multiplier P together with its class.
///
/// Symbols are immutable. Copies share one lattice cache, so sampling a
/// symbol on the same grid twice evaluates it once.
class Symbol {
 public:
  std::string_view key() const;
  SymbolKind kind() const;
  const SymbolParams& params() const;
  const SymbolClass& symbol_class() const;
  bool is_homogeneous() const { return std::holds_alternative<Homogeneous>(symbol_class()); }
  bool is_bounded() const { return std::holds_alternative<Bounded>(symbol_class()); }

  /// Canonical textual form, e.g. "arctan_step(h=0.1)". Rescaled symbols
  /// carry their amplitude and inner scale in the name.
  std::string name() const;

  /// P(xi) for a frequency vector of length 1 or 2.
  double operator()(std::span<const double> xi) const;
  double operator()(double xi) const;

  /// xi -> amplitude * P(inner * xi). Homogeneous degree is unchanged; the
  /// bound of a bounded symbol scales with |amplitude|.
  Symbol rescaled(double amplitude, double inner) const;

  double amplitude() const;
  double inner_scale() const;

  /// P sampled on the frequency lattice of the grid (FFT order), cached per
  /// grid. Throws if any value is non-finite, naming the frequency.
  std::shared_ptr<const std::vector<double>> on_lattice(const Grid& grid) const;

  friend Symbol make_symbol(std::string_view key, const SymbolParams& params);

 private:
  struct Impl;
  explicit Symbol(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

/// Builds a catalog symbol. Keys and parameters:
///   laplacian                 -|xi|^2
///   fourth_order              |xi|^4
///   power_m(m, mu=1)          mu |xi|^m
///   odd_power_1d(j=1)         xi^(2j+1), d = 1 only
///   transport(c, c2=0)        c . xi
///   constant(c=0)             c
///   arctan_step(h)            -(1/h) arctan(h |xi|^2)
///   regularized_laplacian     -|xi|^2 / (1 + |xi|^2)
///   wave                      |xi|
///   directional_m(m, c=1, c2=0)  |xi|^(m-1) (c . xi)
Symbol make_symbol(std::string_view key, const SymbolParams& params = {});

/// Parses "key" or "key(name=value, ...)".
Symbol parse_symbol(std::string_view text);

/// Catalog keys in declaration order.
std::span<const std::string_view> symbol_keys();

struct HomogeneityReport {
  double max_relative_deviation = 0.0;
  int trials = 0;
  bool pass = false;
};

/// Samples mu in {0.5, 2, 3} and random xi and compares P(mu xi) with
/// mu^m P(xi); passes when the worst relative deviation is <= 1e-10.
HomogeneityReport verify_homogeneity(const Symbol& symbol, double degree, int trials, int dim = 1,
                                     std::uint64_t seed = 1);

}  // namespace mdnls
