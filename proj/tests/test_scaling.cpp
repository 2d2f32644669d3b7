#include <doctest.h>

#include <cmath>
#include <random>

#include "mdnls/scaling.hpp"
#include "mdnls/spectral.hpp"

using namespace mdnls;

TEST_CASE("bounded scaling example") {
  const auto p = compute_scaling(1, 2.0, 0.25, Bounded{1.0});
  CHECK(p.s0 == 0.5);
  CHECK(p.two_plus_alpha == doctest::Approx(0.5));
  CHECK(p.eps_exponent == doctest::Approx(0.5));
  CHECK(p.eps(0.01) == doctest::Approx(0.1));
  CHECK(p.h_from_eps(0.1) == doctest::Approx(0.01));
  CHECK(p.beta == doctest::Approx(1.0));
  CHECK(p.growth_exponent() == doctest::Approx(0.25 * 0.1 - 0.05 - 2 * 2 * 0.05 * 0.25));
}

TEST_CASE("homogeneous scaling example") {
  const auto p = compute_scaling(2, 2.0, 0.25, Homogeneous{2.0}, 1.0);
  CHECK(p.s0 == doctest::Approx(0.5));
  CHECK(p.two_plus_alpha == doctest::Approx(8.0 / 3.0));
  CHECK(p.eps_exponent == doctest::Approx(1.0 / 3.0));
  const double h = 0.1;
  const double m = 2.0, omega = 1.0;
  const double lhs = (2.0 * 2.0 * (1.0 - 0.25) - m) * std::log(h);
  CHECK(std::abs(lhs - (m + omega) * std::log(p.eps(h))) < 1e-12);
  CHECK(p.beta == doctest::Approx(2.0));
}

TEST_CASE("hypotheses are enforced") {
  CHECK_THROWS_WITH_AS(compute_scaling(1, 2.0, 0.6, Bounded{1.0}), doctest::Contains("s < d/2 required"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(compute_scaling(2, 2.0, 0.5, Homogeneous{2.0}), doctest::Contains("s0"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(compute_scaling(1, 1.0, 0.1, Homogeneous{2.0}), doctest::Contains("s0 > 0"),
                       std::invalid_argument);
  CHECK_THROWS_AS(compute_scaling(1, 2.0, 0.0, Bounded{1.0}), std::invalid_argument);
  CHECK_THROWS_AS(compute_scaling(1, 2.0, 0.2, Bounded{1.0}, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(compute_scaling(1, 2.0, 0.2, Bounded{1.0}, 1.0, 0.05, -1.0), std::invalid_argument);
}

TEST_CASE("scaling identities over random admissible draws") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int homogeneous = 0;
  for (int draw = 0; draw < 100; ++draw) {
    const int d = 1 + static_cast<int>(u(rng) * 2.0);
    const double sigma = 1.0 + 3.0 * u(rng);
    const bool hom = draw % 2 == 0;
    const double m = 1.0 + u(rng) * (2.0 * sigma * 0.5 * d - 1.0) * 0.9;
    const double omega = 0.2 + 2.0 * u(rng);
    SymbolClass cls = hom ? SymbolClass{Homogeneous{m}} : SymbolClass{Bounded{1.0}};
    const double s0 = hom ? 0.5 * d - m / (2.0 * sigma) : 0.5 * d;
    if (!(s0 > 0.0)) continue;
    const double s = s0 * (0.05 + 0.9 * u(rng));
    const auto p = compute_scaling(d, sigma, s, cls, omega, 0.05, 0.1);
    homogeneous += hom;
    const double h = std::exp(-1.0 - 5.0 * u(rng));
    const double eps = p.eps(h);
    CAPTURE(draw);

    CHECK(p.eps_exponent > 0.0);
    CHECK(eps < 1.0);
    // h^(2 sigma (s0 - s)) = eps^(1 + beta), both beta forms.
    const double lhs = 2.0 * sigma * (p.s0 - s) * std::log(h);
    CHECK(std::abs(lhs - (1.0 + beta_general(p)) * std::log(eps)) <= 1e-10 * std::abs(lhs));
    CHECK(std::abs(beta_general(p) - beta_closed(p)) <= 1e-10 * beta_closed(p));
    if (hom) {
      // h^(2 sigma (d/2 - s) - m) = eps^(m + omega).
      const double a = (2.0 * sigma * (0.5 * d - s) - m) * std::log(h);
      CHECK(std::abs(a - (m + omega) * std::log(eps)) <= 1e-10 * std::abs(a));
    }
    // eps = h^(2 sigma (d/2 - s) - (2 + alpha)).
    CHECK(std::abs(std::log(eps) - (2.0 * sigma * (0.5 * d - s) - p.two_plus_alpha) * std::log(h)) <=
          1e-10 * std::abs(std::log(eps)));
    CHECK(std::abs(std::log(p.t_h(h)) - std::log(p.t_h_closed(h))) <= 1e-10 * std::abs(std::log(p.t_h(h))));
    CHECK(p.h_from_eps(eps) == doctest::Approx(h).epsilon(1e-12));
  }
  CHECK(homogeneous > 20);
}

TEST_CASE("concentrated data") {
  const auto p = compute_scaling(1, 2.0, 0.25, Bounded{1.0});
  const Grid g(1, 128, 1.0);
  const double h = std::exp(-2.0);
  const Field u = build_concentrated_data(p, h, g);
  CHECK(std::abs(u[64]) == doctest::Approx(std::exp(0.5) * std::pow(2.0, -0.05)).epsilon(1e-14));
  for (std::size_t j = 1; j < 64; ++j) CHECK(std::abs(u[64 - j]) == doctest::Approx(std::abs(u[64 + j])));

  CHECK_THROWS_AS(build_concentrated_data(p, 1.0, g), std::invalid_argument);
  CHECK_THROWS_AS(build_concentrated_data(p, 0.5, g), std::invalid_argument);
  CHECK_THROWS_WITH(build_concentrated_data(p, h, Grid(1, 32, 1.0)), doctest::Contains("n"));
  CHECK_THROWS_WITH(build_concentrated_data(p, 0.02, Grid(1, 1024, 0.05)), doctest::Contains("L"));
}

TEST_CASE("ODE phase profile") {
  const Grid g(2, 32, 4.0);
  const double kappa = 0.9;
  const Field phi0 = ode_phase_profile(0.0, g, kappa, 1.0, 2.0, 0.1);
  const Field phi = ode_phase_profile(0.37, g, kappa, 1.0, 2.0, 0.1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.position(i);
    const double a0 = std::exp(-(x[0] * x[0] + x[1] * x[1]));
    CHECK(std::abs(phi0[i] - Complex(kappa * a0, 0.0)) < 1e-16);
    CHECK(std::abs(phi[i]) == doctest::Approx(std::abs(phi0[i])).epsilon(1e-15));
    const Complex expect = kappa * a0 * std::polar(1.0, -(0.37 / 0.1) * std::pow(kappa * a0, 4.0));
    CHECK(std::abs(phi[i] - expect) < 1e-15);
  }
}
