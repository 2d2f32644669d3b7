#pragma once

#include <complex>
#include <span>
#include <vector>

#include "mdnls/grid.hpp"

namespace mdnls {

using Complex = std::complex<double>;

/// Complex samples on the physical nodes of a grid.
class Field {
 public:
  explicit Field(Grid grid);
  Field(Grid grid, std::vector<Complex> values);

  /// Samples f(x) at every node; f receives the d coordinates of the node.
  template <typename Fn>
  static Field sample(const Grid& grid, Fn&& f) {
    Field out(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto x = grid.position(i);
      out.values_[i] = f(std::span<const double>(x.data(), static_cast<std::size_t>(grid.dim())));
    }
    return out;
  }

  const Grid& grid() const { return grid_; }
  std::span<const Complex> values() const { return values_; }
  std::span<Complex> values() { return values_; }
  std::size_t size() const { return values_.size(); }

  Complex& operator[](std::size_t i) { return values_[i]; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }

  bool all_finite() const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(Complex factor);

 private:
  Grid grid_;
  std::vector<Complex> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(Complex factor, Field a);

/// Spectral coefficients in FFT storage order, scaled so that the discrete
/// Plancherel identity holds against the quadrature L2 norm of the Field.
class SpectralField {
 public:
  explicit SpectralField(Grid grid);
  SpectralField(Grid grid, std::vector<Complex> coeffs);

  const Grid& grid() const { return grid_; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  std::span<Complex> coeffs() { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }

  Complex& operator[](std::size_t i) { return coeffs_[i]; }
  const Complex& operator[](std::size_t i) const { return coeffs_[i]; }

 private:
  Grid grid_;
  std::vector<Complex> coeffs_;
};

}  // namespace mdnls
