#include <doctest.h>

#include <random>

#include "morbit/group_ops.hpp"

using namespace morbit;

static Element el(const std::string& s) { return parse_element(s); }

TEST_CASE("wreath product multiplication, pinned example") {
  GroupExpr w = wr_z(int_line(), 3);
  // (u*v)_i = a_i * b_{(i+k) mod m}, shifts add
  Element u = el("[[1,2,3],1]");
  Element v = el("[[10,20,30],0]");
  CHECK(mul(w, u, v) == el("[[21,32,13],1]"));
  CHECK(mul(w, v, u) == el("[[11,22,33],1]"));

  Element e = identity_element(w);
  CHECK(e == el("[[0,0,0],0]"));
  CHECK(mul(w, u, inverse(w, u)) == e);
  CHECK(mul(w, inverse(w, u), u) == e);
}

TEST_CASE("element shape validation") {
  GroupExpr w = wr_z(cyclic(2), 2);
  CHECK(shape_ok(w, el("[[1,0],5]")));
  CHECK_FALSE(shape_ok(w, el("[[1,0,0],5]")));  // wrong arity
  CHECK_FALSE(shape_ok(w, el("[[2,0],0]")));    // residue out of range
  CHECK_FALSE(shape_ok(w, el("[1,0]")));
  CHECK_THROWS_AS(mul(w, el("[[2,0],0]"), el("[[0,0],0]")),
                  std::invalid_argument);

  GroupExpr wm = wr_zm(cyclic(2), 3);
  CHECK(shape_ok(wm, el("[[1,0,1],2]")));
  CHECK_FALSE(shape_ok(wm, el("[[1,0,1],3]")));  // shift must be mod m

  GroupExpr tw = twisted_wr_z(cyclic(2), cyclic(3), Involution::identity(), 2);
  CHECK(shape_ok(tw, el("[[0,1,0,1],[2,0],7]")));
  CHECK_FALSE(shape_ok(tw, el("[[0,1,0,1],[2,0,0],7]")));
}

TEST_CASE("powers, conjugation, and element orders") {
  GroupExpr wm = wr_zm(cyclic(2), 3);
  Element u = el("[[1,0,0],1]");
  CHECK(power(wm, u, Int(2)) == mul(wm, u, u));
  CHECK(power(wm, u, Int(0)) == identity_element(wm));
  CHECK(power(wm, u, Int(-1)) == inverse(wm, u));

  auto r = element_order(wm, u, 100);
  CHECK(r.status == OrderResult::Status::Finite);
  CHECK(r.order == 6);  // ((1,0,0);1)^3 = ((1,1,1);0), squares to identity

  GroupExpr w = wr_z(cyclic(2), 3);
  auto inf = element_order(w, el("[[1,0,0],1]"), 100);
  CHECK(inf.status == OrderResult::Status::Infinite);

  Element g = el("[[0,1,0],2]");
  Element c = conjugate(wm, g, u);
  CHECK(mul(wm, g, u) == mul(wm, c, g));
}

TEST_CASE("twisted closed form agrees with the stepwise oracle") {
  std::mt19937_64 rng(7);
  std::vector<GroupExpr> pool = {unit(), cyclic(2), cyclic(3)};
  std::vector<Involution> gammas = {Involution::identity(),
                                    Involution::inversion()};
  int checked = 0;
  for (int iter = 0; iter < 400; ++iter) {
    GroupExpr g = pool[rng() % pool.size()];
    GroupExpr h = pool[rng() % pool.size()];
    long long m = 1 + static_cast<long long>(rng() % 4);
    GroupExpr tw = twisted_wr_z(g, h, gammas[rng() % 2], m);
    Element u = sample_element(tw, rng);
    Element v = sample_element(tw, rng);
    CHECK(mul(tw, u, v) == twisted_mul_oracle(tw, u, v));
    ++checked;
  }
  CHECK(checked == 400);
}

TEST_CASE("gamma involutions check out") {
  GroupExpr h = cyclic(6);
  auto chk = check_involution(h, Involution::inversion(), 3);
  CHECK(chk.involutive);
  CHECK(chk.homomorphic);

  GroupExpr hh = direct({cyclic(2), cyclic(2)});
  auto swp = check_involution(hh, Involution::factor_perm({1, 0}), 3);
  CHECK(swp.involutive);
  CHECK(swp.homomorphic);

  // a table that is not an involution is caught
  auto bad = Involution::table_map({{Element(0), Element(1)},
                                    {Element(1), Element(2)},
                                    {Element(2), Element(0)}});
  auto badchk = check_involution(cyclic(3), bad, 3);
  CHECK_FALSE(badchk.involutive);
}

TEST_CASE("eta projection and shift generator") {
  GroupExpr w = wr_z(cyclic(2), 3);
  CHECK(canonical_eta(w, el("[[1,0,1],5]")) == 5);
  Element g = shift_generator(w);
  CHECK(canonical_eta(w, g) == 1);
  CHECK(with_zero_shift(w, el("[[1,0,1],5]")) == el("[[1,0,1],0]"));

  GroupExpr tw = twisted_wr_z(cyclic(2), cyclic(2), Involution::identity(), 1);
  CHECK(canonical_eta(tw, el("[[1,0],[1],-3]")) == -3);
  CHECK(canonical_eta(int_line(), Element(9)) == 9);
}

TEST_CASE("quotient orders follow the cartesian count") {
  // |Wr(G,m)| at multiplier N is |G|^m * mN; the finite forms carry no N
  CHECK(quotient_order(wr_z(cyclic(2), 3), 1) == 24);
  CHECK(quotient_order(wr_z(cyclic(2), 3), 2) == 48);
  CHECK(quotient_order(wr_zm(cyclic(2), 3), 1) == 24);
  CHECK(quotient_order(wr_zm(cyclic(2), 3), 5) == 24);
  CHECK(quotient_order(wr_zz(cyclic(2), 2, 2), 1) == 64);
  CHECK(quotient_order(twisted_wr_z(cyclic(2), cyclic(3), Involution::identity(), 1), 1) == 24);
  CHECK(quotient_order(twisted_wr_zm(cyclic(2), cyclic(3), Involution::identity(), 2), 1) ==
        Int(16) * 9 * 4);

  CHECK(quotientable(wr_z(cyclic(2), 2)));
  CHECK_FALSE(quotientable(wr_z(int_line(), 2)));
  CHECK_FALSE(quotientable(direct({cyclic(2), int_line()})));

  auto elems = quotient_elements(wr_z(cyclic(2), 3), 1, Int(100));
  CHECK(elems.size() == 24);
  CHECK_THROWS(quotient_elements(wr_z(cyclic(2), 3), 4, Int(10)));
}

TEST_CASE("quotient group axioms on sampled elements") {
  std::mt19937_64 rng(11);
  GroupExpr tw = twisted_wr_z(cyclic(3), cyclic(2), Involution::inversion(), 2);
  for (int i = 0; i < 200; ++i) {
    Element u = quotient_sample(tw, 2, rng);
    Element v = quotient_sample(tw, 2, rng);
    Element w = quotient_sample(tw, 2, rng);
    CHECK(quotient_mul(tw, 2, quotient_mul(tw, 2, u, v), w) ==
          quotient_mul(tw, 2, u, quotient_mul(tw, 2, v, w)));
    CHECK(quotient_mul(tw, 2, u, quotient_inverse(tw, 2, u)) ==
          quotient_identity(tw, 2));
  }
}

TEST_CASE("substitute_int_line replaces free Z leaves") {
  GroupExpr e = direct({int_line(), wr_z(int_line(), 2)});
  GroupExpr s = substitute_int_line(e, 3);
  CHECK(format_expr(s) == "Z3 x Wr(Z3, 2)");
  CHECK(quotientable(s));
}
