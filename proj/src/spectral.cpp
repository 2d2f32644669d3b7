#include "mdnls/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fft.hpp"

namespace mdnls {

Field::Field(Grid grid) : grid_(grid), values_(grid.size()) {}

Field::Field(Grid grid, std::vector<Complex> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("field has " + std::to_string(values_.size()) + " values, grid needs " +
                                std::to_string(grid_.size()));
  }
}

bool Field::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

namespace {
void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw std::invalid_argument("fields live on different grids");
}
}  // namespace

Field& Field::operator+=(const Field& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Field& Field::operator*=(Complex factor) {
  for (auto& v : values_) v *= factor;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(Complex factor, Field a) { return a *= factor; }

SpectralField::SpectralField(Grid grid) : grid_(grid), coeffs_(grid.size()) {}

SpectralField::SpectralField(Grid grid, std::vector<Complex> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size()) throw std::invalid_argument("coefficient count does not match grid");
}

namespace {

// c_k = a * DFT(f)_k with a = sqrt(cell_volume / N) makes sum |c_k|^2 equal
// to sum |f_j|^2 cell_volume.
double forward_scale(const Grid& g) {
  return std::sqrt(g.cell_volume() / static_cast<double>(g.size()));
}

}  // namespace

SpectralField transform(const Field& f) {
  const Grid& g = f.grid();
  std::vector<Complex> data(f.values().begin(), f.values().end());
  detail::dft_forward(g, data);
  const double a = forward_scale(g);
  for (auto& c : data) c *= a;
  return SpectralField(g, std::move(data));
}

Field inverse_transform(const SpectralField& F) {
  const Grid& g = F.grid();
  std::vector<Complex> data(F.coeffs().begin(), F.coeffs().end());
  detail::dft_backward(g, data);
  const double b = 1.0 / (forward_scale(g) * static_cast<double>(g.size()));
  for (auto& v : data) v *= b;
  return Field(g, std::move(data));
}

SpectralField free_propagate(const SpectralField& F, const Symbol& symbol, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("propagation time must be finite");
  const auto lattice = symbol.on_lattice(F.grid());
  SpectralField out = F;
  if (t == 0.0) return out;
  auto c = out.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= std::polar(1.0, t * (*lattice)[i]);
  return out;
}

Field free_propagate(const Field& f, const Symbol& symbol, double t) {
  if (t == 0.0) {
    symbol.on_lattice(f.grid());
    return f;
  }
  return inverse_transform(free_propagate(transform(f), symbol, t));
}

double sobolev_norm(const SpectralField& F, double s, bool homogeneous) {
  if (!std::isfinite(s)) throw std::invalid_argument("Sobolev index must be finite");
  const Grid& g = F.grid();
  const auto c = F.coeffs();
  double total2 = 0.0;
  for (const auto& z : c) total2 += std::norm(z);

  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto xi = g.frequency_vector(i);
    const double r2 = xi[0] * xi[0] + xi[1] * xi[1];
    const double mass = std::norm(c[i]);
    if (!homogeneous) {
      sum += (s == 0.0 ? 1.0 : std::pow(1.0 + r2, s)) * mass;
      continue;
    }
    if (r2 == 0.0) {
      if (s == 0.0) {
        sum += mass;
      } else if (s < 0.0 && mass > 1e-28 * total2) {
        throw std::domain_error("homogeneous Sobolev norm of negative order needs a zero mean");
      }
      continue;
    }
    sum += (s == 0.0 ? 1.0 : std::pow(r2, s)) * mass;
  }
  return std::sqrt(sum);
}

double sobolev_norm(const Field& f, double s, bool homogeneous) {
  return sobolev_norm(transform(f), s, homogeneous);
}

double lebesgue_norm(const Field& f, double q) {
  if (std::isnan(q) || q < 1.0) throw std::invalid_argument("Lebesgue exponent must be >= 1");
  const auto v = f.values();
  if (std::isinf(q)) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
  }
  double sum = 0.0;
  if (q == 2.0) {
    for (const auto& z : v) sum += std::norm(z);
  } else {
    for (const auto& z : v) sum += std::pow(std::abs(z), q);
  }
  return std::pow(sum * f.grid().cell_volume(), 1.0 / q);
}

double spacetime_norm_from_values(std::span<const std::pair<double, double>> lq_values, double p) {
  if (lq_values.size() < 2) throw std::invalid_argument("space-time norm needs at least two snapshots");
  if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("time exponent must lie in [1, inf)");
  double integral = 0.0;
  for (std::size_t i = 1; i < lq_values.size(); ++i) {
    const double dt = lq_values[i].first - lq_values[i - 1].first;
    if (!(dt > 0.0)) throw std::invalid_argument("snapshot times must be strictly increasing");
    integral += 0.5 * dt * (std::pow(lq_values[i - 1].second, p) + std::pow(lq_values[i].second, p));
  }
  return std::pow(integral, 1.0 / p);
}

double spacetime_norm(std::span<const TimedField> snapshots, double p, double q) {
  if (snapshots.size() < 2) throw std::invalid_argument("space-time norm needs at least two snapshots");
  std::vector<std::pair<double, double>> values;
  values.reserve(snapshots.size());
  for (const auto& s : snapshots) values.emplace_back(s.t, lebesgue_norm(s.field, q));
  return spacetime_norm_from_values(values, p);
}

double spatial_tail_fraction(const Field& f) {
  const Grid& g = f.grid();
  const double r = 0.5 * g.half_length();
  double total = 0.0;
  double outside = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto x = g.position(i);
    const double m = std::norm(f[i]);
    total += m;
    if (x[0] * x[0] + x[1] * x[1] > r * r) outside += m;
  }
  return total == 0.0 ? 0.0 : outside / total;
}

double spectral_tail_fraction(const SpectralField& F) {
  const Grid& g = F.grid();
  const long cut = static_cast<long>(g.points() / 4);
  double total = 0.0;
  double top = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) {
    const auto k = g.wavenumber_vector(i);
    const double m = std::norm(F[i]);
    total += m;
    if (std::max(std::labs(k[0]), std::labs(k[1])) >= cut) top += m;
  }
  return total == 0.0 ? 0.0 : top / total;
}

double spectral_tail_fraction(const Field& f) { return spectral_tail_fraction(transform(f)); }

void dealias_two_thirds(SpectralField& F) {
  const Grid& g = F.grid();
  const double cut = static_cast<double>(g.points()) / 3.0;
  for (std::size_t i = 0; i < F.size(); ++i) {
    const auto k = g.wavenumber_vector(i);
    if (static_cast<double>(std::max(std::labs(k[0]), std::labs(k[1]))) > cut) F[i] = 0.0;
  }
}

}  // namespace mdnls
