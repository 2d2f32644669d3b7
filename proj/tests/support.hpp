#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "mdnls/field.hpp"
#include "mdnls/symbol.hpp"

namespace mdnls::testing {

/// One instance of every catalog entry.
inline std::vector<Symbol> catalog(int dim) {
  std::vector<Symbol> out{
      make_symbol("laplacian"),
      make_symbol("fourth_order"),
      make_symbol("power_m", {{"m", 3.0}}),
      make_symbol("transport", {{"c", 1.5}, {"c2", -0.5}}),
      make_symbol("constant", {{"c", 2.0}}),
      make_symbol("arctan_step", {{"h", 1.0}}),
      make_symbol("regularized_laplacian"),
      make_symbol("wave"),
      make_symbol("directional_m", {{"m", 2.0}}),
  };
  if (dim == 1) out.push_back(make_symbol("odd_power_1d"));
  return out;
}

/// Random trigonometric polynomial of low degree plus a Gaussian bump.
inline Field random_smooth_field(const Grid& grid, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Complex> a(9);
  for (auto& c : a) c = {g(rng), g(rng)};
  const double k0 = grid.frequency_step();
  return Field::sample(grid, [&](std::span<const double> x) {
    Complex v{0.0, 0.0};
    for (int j = -4; j <= 4; ++j) {
      double phase = j * k0 * x[0];
      if (x.size() > 1) phase += (j % 3) * k0 * x[1];
      v += a[j + 4] * std::polar(1.0, phase);
    }
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return v + std::exp(-r2);
  });
}

inline double relative_error(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace mdnls::testing
