#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mdnls/spectral.hpp"
#include "support.hpp"

using namespace mdnls;
using mdnls::testing::relative_error;

namespace {

Field gaussian(const Grid& g) {
  return Field::sample(g, [](std::span<const double> x) {
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return Complex(std::exp(-r2), 0.0);
  });
}

}  // namespace

TEST_CASE("zero field has zero coefficients") {
  const Grid g(2, 16, 3.0);
  const auto F = transform(Field(g));
  for (auto c : F.coeffs()) CHECK(c == Complex(0.0, 0.0));
  CHECK(sobolev_norm(Field(g), 1.0) == 0.0);
}

TEST_CASE("single Fourier mode lands on one coefficient") {
  const Grid g(1, 8, std::numbers::pi);
  const auto f = Field::sample(g, [](std::span<const double> x) { return std::polar(1.0, x[0]); });
  const auto F = transform(f);
  for (std::size_t i = 0; i < F.size(); ++i) {
    if (i == 1) {
      // |c_1| equals the L2 norm of e^{ix} over [-pi, pi).
      CHECK(std::abs(F[i]) == doctest::Approx(std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-14));
    } else {
      CHECK(std::abs(F[i]) < 1e-14);
    }
  }
}

TEST_CASE("round trip and Plancherel on random data") {
  for (int d : {1, 2}) {
    const Grid g(d, d == 1 ? 128 : 32, 5.0);
    const Field f = mdnls::testing::random_smooth_field(g, 7u + d);
    const Field back = inverse_transform(transform(f));
    double err = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) err = std::max(err, std::abs(back[i] - f[i]));
    CHECK(err < 1e-12 * lebesgue_norm(f, INFINITY));

    double direct = 0.0;
    for (auto v : f.values()) direct += std::norm(v);
    direct = std::sqrt(direct * g.cell_volume());
    CHECK(relative_error(sobolev_norm(f, 0.0), direct) < 1e-12);
    CHECK(relative_error(lebesgue_norm(f, 2.0), direct) < 1e-12);
  }
}

TEST_CASE("Gaussian norms against closed-form integrals") {
  const Grid g(1, 256, 8.0);
  const Field a0 = gaussian(g);
  const double l2 = std::pow(std::numbers::pi / 2.0, 0.25);
  CHECK(sobolev_norm(a0, 0.0) == doctest::Approx(l2).epsilon(1e-13));
  // Integral of exp(-4x^2) is sqrt(pi)/2.
  CHECK(lebesgue_norm(a0, 4.0) == doctest::Approx(std::pow(std::sqrt(std::numbers::pi) / 2.0, 0.25)).epsilon(1e-13));
  CHECK(lebesgue_norm(a0, 4.0) == doctest::Approx(0.970256).epsilon(1e-6));
  // |f|^2 + |f'|^2 integrates to 2 sqrt(pi/2).
  CHECK(sobolev_norm(a0, 1.0) == doctest::Approx(std::sqrt(2.0) * l2).epsilon(1e-13));
  // Hdot^1: integral of 4x^2 exp(-2x^2) is sqrt(pi/2).
  CHECK(sobolev_norm(a0, 1.0, true) == doctest::Approx(l2).epsilon(1e-13));
  CHECK(lebesgue_norm(a0, INFINITY) == doctest::Approx(1.0));
}

TEST_CASE("single unit mode at xi = (1, 0) has H^1 norm sqrt 2") {
  const Grid g(2, 16, std::numbers::pi);
  const auto f = Field::sample(
      g, [](std::span<const double> x) { return std::polar(1.0 / (2.0 * std::numbers::pi), x[0]); });
  CHECK(sobolev_norm(f, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sobolev_norm(f, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("constant field L^q norm is (2L)^(d/q)") {
  for (int d : {1, 2}) {
    const Grid g(d, 16, 1.5);
    const Field one = Field::sample(g, [](std::span<const double>) { return Complex(1.0, 0.0); });
    for (double q : {1.0, 2.0, 3.0, 7.5}) {
      CHECK(lebesgue_norm(one, q) == doctest::Approx(std::pow(3.0, d / q)).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(lebesgue_norm(Field(Grid(1, 8, 1.0)), 0.5), std::invalid_argument);
}

TEST_CASE("homogeneous negative-order norm needs a vanishing mean") {
  const Grid g(1, 64, 4.0);
  CHECK_THROWS_AS(sobolev_norm(gaussian(g), -1.0, true), std::domain_error);
  const auto wave = Field::sample(g, [&](std::span<const double> x) {
    return Complex(std::sin(g.frequency_step() * x[0]), 0.0);
  });
  CHECK(sobolev_norm(wave, -1.0, true) ==
        doctest::Approx(sobolev_norm(wave, 0.0) / g.frequency_step()).epsilon(1e-12));
}

TEST_CASE("free propagation: identity, constant phase, transport shift") {
  const Grid g(1, 32, std::numbers::pi);
  const Field f = mdnls::testing::random_smooth_field(g, 3);

  const Field same = free_propagate(f, make_symbol("laplacian"), 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(same[i] == f[i]);

  const double c = 1.7, t = 0.9;
  const Field rotated = free_propagate(f, make_symbol("constant", {{"c", c}}), t);
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(std::abs(rotated[i] - std::polar(1.0, c * t) * f[i]) < 1e-13);
  }

  // c t equals three grid spacings, so u(x) -> u(x + ct) is an index shift.
  const double shift = 3.0 * g.spacing();
  const Field moved = free_propagate(f, make_symbol("transport", {{"c", 2.0}}), shift / 2.0);
  for (std::size_t j = 0; j < f.size(); ++j) CHECK(std::abs(moved[j] - f[(j + 3) % f.size()]) < 1e-12);
}

TEST_CASE("free propagation is unitary on H^s for every catalog symbol") {
  for (int d : {1, 2}) {
    const Grid g(d, d == 1 ? 64 : 16, 4.0);
    const Field f = mdnls::testing::random_smooth_field(g, 11);
    for (const auto& P : mdnls::testing::catalog(d)) {
      const Field u = free_propagate(f, P, 0.731);
      for (double s : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
        CAPTURE(P.name());
        CAPTURE(s);
        CHECK(relative_error(sobolev_norm(u, s), sobolev_norm(f, s)) < 1e-12);
      }
    }
  }
}

TEST_CASE("space-time norms") {
  const Grid g(1, 64, 4.0);
  const Field a0 = gaussian(g);
  const double lq = lebesgue_norm(a0, 4.0);

  std::vector<TimedField> constant{{0.0, a0}, {0.3, a0}, {1.1, a0}, {2.0, a0}};
  CHECK(spacetime_norm(constant, 8.0, 4.0) == doctest::Approx(std::pow(2.0, 1.0 / 8.0) * lq).epsilon(1e-14));

  const Field b = Complex(2.0, 0.0) * a0;
  std::vector<TimedField> two{{0.0, a0}, {0.5, b}};
  CHECK(spacetime_norm(two, 1.0, 4.0) == doctest::Approx(0.25 * (lq + 2.0 * lq)).epsilon(1e-14));

  std::vector<TimedField> flow;
  for (int i = 0; i <= 10; ++i) flow.push_back({0.1 * i, free_propagate(a0, make_symbol("constant"), 0.1 * i)});
  CHECK(spacetime_norm(flow, 8.0, 4.0) == doctest::Approx(lq).epsilon(1e-14));

  std::vector<TimedField> one{{0.0, a0}};
  CHECK_THROWS(spacetime_norm(one, 2.0, 2.0));
  std::vector<TimedField> unsorted{{0.5, a0}, {0.1, a0}};
  CHECK_THROWS(spacetime_norm(unsorted, 2.0, 2.0));
}

TEST_CASE("tail fractions and dealiasing") {
  const Grid g(1, 256, 8.0);
  CHECK(spectral_tail_fraction(gaussian(g)) < 1e-20);
  CHECK(spatial_tail_fraction(gaussian(g)) < 1e-12);
  const auto hi = Field::sample(g, [&](std::span<const double> x) {
    return std::polar(1.0, 120.0 * g.frequency_step() * x[0]);
  });
  CHECK(spectral_tail_fraction(hi) == doctest::Approx(1.0));
  auto F = transform(hi);
  dealias_two_thirds(F);
  CHECK(sobolev_norm(F, 0.0) < 1e-13);
}
