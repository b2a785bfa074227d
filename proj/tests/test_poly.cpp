#include <doctest.h>

#include <random>

#include "morbit/poly.hpp"

using namespace morbit;

static HomogeneousPoly P(const std::string& s) {
  return HomogeneousPoly::parse(s);
}

TEST_CASE("polynomial parsing and printing") {
  CHECK(P("x^3 - 3*x*y^2").to_string() == "x^3 - 3*x*y^2");
  CHECK(P("-xy").to_string() == "-x*y");
  CHECK(P("1/2*x^2 + y^2").coeff(2, 0) == Rational(1, 2));
  CHECK(P("y^4").degree() == 4);
  CHECK(P("0").is_zero());

  CHECK_THROWS_AS(P("x^2 + y"), std::invalid_argument);  // inhomogeneous
  CHECK_THROWS_AS(P("x +"), std::invalid_argument);
  CHECK_THROWS_AS(P("z^2"), std::invalid_argument);
}

TEST_CASE("arithmetic and formal partials") {
  auto g = P("x^3 - 3*x*y^2");
  CHECK(g.dx() == P("3*x^2 - 3*y^2"));
  CHECK(g.dy() == P("-6*x*y"));
  CHECK(g.swap_xy() == P("y^3 - 3*x^2*y"));
  CHECK(P("x*y") * P("x + y") == P("x^2*y + x*y^2"));
  CHECK(P("x^2") - P("x^2") == HomogeneousPoly::zero(2));

  // Euler relation x*g_x + y*g_y = deg * g for homogeneous g
  auto euler = HomogeneousPoly::monomial(1, 0) * g.dx() +
               HomogeneousPoly::monomial(0, 1) * g.dy();
  CHECK(euler == g * Rational(3));

  CHECK(P("x^2*y^3").x_multiplicity() == 2);
  CHECK(P("x^2*y^3").divide_x_power(2) == P("y^3").times_x_power(0));
}

TEST_CASE("squarefreeness") {
  CHECK(is_squarefree(P("x*y")));
  CHECK(is_squarefree(P("x^3 - 3*x*y^2")));
  CHECK(is_squarefree(P("x^2 - y^2")));
  CHECK_FALSE(is_squarefree(P("x^2*y")));
  CHECK_FALSE(is_squarefree(P("x^2 + 2*x*y + y^2")));  // (x+y)^2
  CHECK_FALSE(is_squarefree(P("x^4 - 2*x^2*y^2 + y^4")));
}

TEST_CASE("jacobian certificates, frozen small cases") {
  SUBCASE("x*y") {
    auto c = jacobian_certificate(P("x*y"), 'x');
    CHECK(c.m == 1);
    CHECK(c.verify(P("x*y")));
    // A = y, B = x: 0*y + 1*x = x
    CHECK(c.P.is_zero());
    CHECK(c.Q == HomogeneousPoly::monomial(0, 0));
  }

  SUBCASE("x^3 - 3*x*y^2 in x") {
    auto g = P("x^3 - 3*x*y^2");
    auto c = jacobian_certificate(g, 'x');
    CHECK(c.m == 3);
    CHECK(c.P == HomogeneousPoly::monomial(1, 0) * Rational(1, 3));
    CHECK(c.Q == HomogeneousPoly::monomial(0, 1) * Rational(-1, 6));
    CHECK(c.verify(g));
  }

  SUBCASE("y variant mirrors the x variant") {
    auto g = P("x^3 - 3*x*y^2");
    auto c = jacobian_certificate(g, 'y');
    CHECK(c.variable == 'y');
    CHECK(c.verify(g));
    auto expanded = g.dx() * c.P + g.dy() * c.Q;
    CHECK(expanded == HomogeneousPoly::monomial(0, c.m));
  }

  SUBCASE("non-squarefree input is refused") {
    CHECK_THROWS(jacobian_certificate(P("x^2*y"), 'x'));
  }
}

TEST_CASE("random certificates expand to exactly zero remainder") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = random_squarefree(rng, 8, 10);
    REQUIRE(is_squarefree(g));
    for (char var : {'x', 'y'}) {
      auto c = jacobian_certificate(g, var);
      CAPTURE(g.to_string());
      CAPTURE(var);
      CHECK(c.verify(g));
      auto lhs = g.dx() * c.P + g.dy() * c.Q;
      auto rhs = var == 'x' ? HomogeneousPoly::monomial(c.m, 0)
                            : HomogeneousPoly::monomial(0, c.m);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("milnor numbers via the exact rank oracle") {
  auto r1 = milnor_number(P("x*y"));
  CHECK(r1.mu == 1);
  CHECK(r1.mu == r1.mu_at_recheck);

  auto r4 = milnor_number(P("x^3 - 3*x*y^2"));
  CHECK(r4.mu == 4);
  CHECK(r4.mu == r4.mu_at_recheck);

  // mu of a generic squarefree homogeneous polynomial of degree d is (d-1)^2
  auto r9 = milnor_number(P("x^4 + y^4"));
  CHECK(r9.mu == 9);

  CHECK_THROWS(milnor_number(P("x^2*y")));
}

TEST_CASE("milnor number is invariant under swapping the variables") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 8; ++trial) {
    auto g = random_squarefree(rng, 6, 6);
    CHECK(milnor_number(g).mu == milnor_number(g.swap_xy()).mu);
  }
}
