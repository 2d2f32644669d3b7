#include "mdnls/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mdnls {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

Grid::Grid(int dim, std::size_t points, double half_length)
    : dim_{dim}, points_{points}, half_length_{half_length} {
  if (dim != 1 && dim != 2) {
    throw std::invalid_argument("grid dimension must be 1 or 2, got " + std::to_string(dim));
  }
  if (points < 8 || !is_power_of_two(points)) {
    throw std::invalid_argument("points per axis must be a power of two >= 8, got " +
                                std::to_string(points));
  }
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw std::invalid_argument("box half-length must be positive and finite");
  }
}

Grid make_grid(int dim, std::size_t points, double half_length) {
  return Grid(dim, points, half_length);
}

std::size_t Grid::size() const { return dim_ == 1 ? points_ : points_ * points_; }

double Grid::cell_volume() const {
  const double h = spacing();
  return dim_ == 1 ? h : h * h;
}

double Grid::frequency_step() const { return std::numbers::pi / half_length_; }

double Grid::node(std::size_t j) const {
  return -half_length_ + 2.0 * half_length_ * static_cast<double>(j) / static_cast<double>(points_);
}

long Grid::wavenumber(std::size_t i) const {
  const auto n = static_cast<long>(points_);
  const auto k = static_cast<long>(i);
  return k < n / 2 ? k : k - n;
}

std::array<double, 2> Grid::position(std::size_t flat) const {
  if (dim_ == 1) return {node(flat), 0.0};
  return {node(flat / points_), node(flat % points_)};
}

std::array<long, 2> Grid::wavenumber_vector(std::size_t flat) const {
  if (dim_ == 1) return {wavenumber(flat), 0};
  return {wavenumber(flat / points_), wavenumber(flat % points_)};
}

std::array<double, 2> Grid::frequency_vector(std::size_t flat) const {
  const auto k = wavenumber_vector(flat);
  const double step = frequency_step();
  return {step * static_cast<double>(k[0]), step * static_cast<double>(k[1])};
}

double Grid::max_positive_frequency() const {
  return frequency_step() * static_cast<double>(points_ / 2 - 1);
}

}  // namespace mdnls
