#pragma once

#include <array>
#include <cstddef>

namespace mdnls {

/// Periodic box [-L, L)^d sampled with n points per axis.
///
/// Physical nodes are x_j = -L + 2Lj/n. Frequencies follow the FFT storage
/// order: index i in [0, n) carries wavenumber k = i for i < n/2 and k = i - n
/// otherwise, with xi_k = (pi/L) k. Multi-dimensional data is stored row-major
/// with the first axis slowest.
class Grid {
 public:
  Grid(int dim, std::size_t points, double half_length);

  int dim() const { return dim_; }
  std::size_t points() const { return points_; }
  double half_length() const { return half_length_; }

  /// Total number of nodes, n^d.
  std::size_t size() const;
  double spacing() const { return 2.0 * half_length_ / static_cast<double>(points_); }
  double cell_volume() const;
  double frequency_step() const;

  double node(std::size_t j) const;
  long wavenumber(std::size_t i) const;
  double frequency(std::size_t i) const { return frequency_step() * static_cast<double>(wavenumber(i)); }

  /// Coordinates of a flat index; unused trailing components are zero.
  std::array<double, 2> position(std::size_t flat) const;
  std::array<double, 2> frequency_vector(std::size_t flat) const;
  std::array<long, 2> wavenumber_vector(std::size_t flat) const;

  /// Largest positive lattice frequency, (pi/L)(n/2 - 1).
  double max_positive_frequency() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int dim_;
  std::size_t points_;
  double half_length_;
};

Grid make_grid(int dim, std::size_t points, double half_length);

bool is_power_of_two(std::size_t n);

}  // namespace mdnls
