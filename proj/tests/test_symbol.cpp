#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mdnls/grid.hpp"
#include "mdnls/symbol.hpp"
#include "support.hpp"

using namespace mdnls;

TEST_CASE("catalog values") {
  const double one_one[] = {1.0, 1.0};
  CHECK(make_symbol("laplacian")(one_one) == doctest::Approx(-2.0));
  CHECK(make_symbol("arctan_step", {{"h", 1.0}})(1.0) == doctest::Approx(-std::numbers::pi / 4.0));
  CHECK(make_symbol("regularized_laplacian")(std::sqrt(3.0)) == doctest::Approx(-0.75));
  CHECK(make_symbol("fourth_order")(2.0) == doctest::Approx(16.0));
  CHECK(make_symbol("power_m", {{"m", 3.0}, {"mu", 2.0}})(-2.0) == doctest::Approx(16.0));
  CHECK(make_symbol("odd_power_1d", {{"j", 2.0}})(-2.0) == doctest::Approx(-32.0));
  CHECK(make_symbol("transport", {{"c", 2.0}, {"c2", 3.0}})(one_one) == doctest::Approx(5.0));
  CHECK(make_symbol("constant", {{"c", -1.5}})(7.0) == -1.5);
  CHECK(make_symbol("wave")(one_one) == doctest::Approx(std::sqrt(2.0)));
  CHECK(make_symbol("directional_m", {{"m", 3.0}})(-2.0) == doctest::Approx(-8.0));
}

TEST_CASE("classes and degrees") {
  CHECK(std::get<Homogeneous>(make_symbol("laplacian").symbol_class()).degree == 2.0);
  CHECK(std::get<Homogeneous>(make_symbol("odd_power_1d", {{"j", 2.0}}).symbol_class()).degree == 5.0);
  CHECK(std::get<Bounded>(make_symbol("arctan_step", {{"h", 0.5}}).symbol_class()).bound ==
        doctest::Approx(std::numbers::pi));
  CHECK(make_symbol("regularized_laplacian").is_bounded());
  CHECK(make_symbol("wave").is_homogeneous());
}

TEST_CASE("bounded symbols respect their bound") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (auto P : {make_symbol("arctan_step", {{"h", 0.3}}), make_symbol("regularized_laplacian"),
                 make_symbol("constant", {{"c", -2.0}})}) {
    const double bound = std::get<Bounded>(P.symbol_class()).bound;
    for (int i = 0; i < 1000; ++i) {
      const double xi[] = {u(rng), u(rng)};
      CHECK(std::abs(P(xi)) <= bound);
    }
  }
}

TEST_CASE("homogeneity verification") {
  CHECK(verify_homogeneity(make_symbol("fourth_order"), 4.0, 50).pass);
  CHECK(verify_homogeneity(make_symbol("wave"), 1.0, 50, 2).pass);
  for (const auto& P : mdnls::testing::catalog(2)) {
    if (P.is_homogeneous()) CHECK(verify_homogeneity(P, std::get<Homogeneous>(P.symbol_class()).degree, 50, 2).pass);
  }
  for (double m : {1.0, 2.0, 3.0}) CHECK_FALSE(verify_homogeneity(make_symbol("arctan_step", {{"h", 1.0}}), m, 50).pass);
  CHECK_FALSE(verify_homogeneity(make_symbol("laplacian"), 3.0, 50).pass);
}

TEST_CASE("names parse back to the same symbol") {
  for (const auto& P : mdnls::testing::catalog(1)) {
    const Symbol Q = parse_symbol(P.name());
    CHECK(Q.name() == P.name());
    CHECK(Q(0.7) == P(0.7));
  }
  CHECK(parse_symbol(" arctan_step( h = 0.1 ) ").name() == "arctan_step(h=0.1)");
}

TEST_CASE("catalog rejects bad keys and parameters") {
  CHECK_THROWS_AS(make_symbol("schrodinger"), std::invalid_argument);
  CHECK_THROWS_AS(make_symbol("laplacian", {{"m", 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_symbol("power_m"), std::invalid_argument);
  CHECK_THROWS_AS(make_symbol("power_m", {{"m", 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(make_symbol("arctan_step", {{"h", 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_symbol("laplacian("), std::invalid_argument);
  CHECK_THROWS_AS(make_symbol("odd_power_1d").on_lattice(Grid(2, 8, 1.0)), std::invalid_argument);
}

TEST_CASE("every symbol is real and finite on random frequencies") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (const auto& P : mdnls::testing::catalog(1)) {
    for (int i = 0; i < 10000; ++i) CHECK_UNARY(std::isfinite(P(u(rng))));
  }
}

TEST_CASE("rescaled symbols") {
  const Symbol P = make_symbol("arctan_step", {{"h", 1.0}});
  const Symbol R = P.rescaled(0.25, 10.0);
  CHECK(R(0.3) == doctest::Approx(0.25 * P(3.0)));
  CHECK(std::get<Bounded>(R.symbol_class()).bound == doctest::Approx(0.25 * std::numbers::pi / 2.0));
  const Symbol L = make_symbol("laplacian").rescaled(2.0, 0.5);
  CHECK(std::get<Homogeneous>(L.symbol_class()).degree == 2.0);
  CHECK(L(2.0) == doctest::Approx(-2.0));
}

TEST_CASE("lattice sampling is cached and matches pointwise evaluation") {
  const Grid g(2, 16, 3.0);
  const Symbol P = make_symbol("wave");
  const auto a = P.on_lattice(g);
  const auto b = P.on_lattice(g);
  CHECK(a.get() == b.get());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto xi = g.frequency_vector(i);
    CHECK((*a)[i] == P(std::span<const double>(xi.data(), 2)));
  }
}
