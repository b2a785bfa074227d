#include <doctest.h>

#include <random>

#include "morbit/group_ops.hpp"
#include "morbit/kernels.hpp"

using namespace morbit;

TEST_CASE("serial and parallel kernels agree bit for bit") {
  GroupExpr expr = wr_zm(cyclic(2), 3);  // order 24
  auto elems = quotient_elements(expr, 1, Int(100));
  auto mulfn = [&](const Element& u, const Element& v) {
    return quotient_mul(expr, 1, u, v);
  };

  auto ts = kernels::build_cayley_table_serial(elems, mulfn);
  auto tp = kernels::build_cayley_table_parallel(elems, mulfn);
  REQUIRE(ts.closed);
  REQUIRE(tp.closed);
  CHECK(ts.table == tp.table);

  size_t n = elems.size();
  auto as = kernels::check_associativity_serial(ts.table, n);
  auto ap = kernels::check_associativity_parallel(ts.table, n);
  CHECK(as.ok);
  CHECK(ap.ok);

  CHECK(kernels::is_latin_serial(ts.table, n));
  CHECK(kernels::is_latin_parallel(ts.table, n));
}

TEST_CASE("failure reports pick the smallest index in both variants") {
  // poison one entry so associativity breaks; both sweeps must report the
  // same smallest failing triple
  GroupExpr expr = wr_zm(cyclic(2), 2);
  auto elems = quotient_elements(expr, 1, Int(100));
  auto mulfn = [&](const Element& u, const Element& v) {
    return quotient_mul(expr, 1, u, v);
  };
  auto t = kernels::build_cayley_table_serial(elems, mulfn);
  size_t n = elems.size();
  t.table[3] = (t.table[3] + 1) % n;

  auto as = kernels::check_associativity_serial(t.table, n);
  auto ap = kernels::check_associativity_parallel(t.table, n);
  REQUIRE_FALSE(as.ok);
  REQUIRE_FALSE(ap.ok);
  CHECK(as.i == ap.i);
  CHECK(as.j == ap.j);
  CHECK(as.k == ap.k);

  CHECK(kernels::is_latin_serial(t.table, n) ==
        kernels::is_latin_parallel(t.table, n));
}

TEST_CASE("pair sweep agrees between variants") {
  auto pred = [](size_t i, size_t j) { return !(i == 5 && j == 7); };
  auto ps = kernels::pair_sweep_serial(20, 20, pred);
  auto pp = kernels::pair_sweep_parallel(20, 20, pred);
  REQUIRE_FALSE(ps.ok);
  REQUIRE_FALSE(pp.ok);
  CHECK(ps.i == 5);
  CHECK(ps.j == 7);
  CHECK(pp.i == 5);
  CHECK(pp.j == 7);

  CHECK(kernels::pair_sweep_serial(4, 4, [](size_t, size_t) { return true; }).ok);
  CHECK(kernels::pair_sweep_parallel(4, 4, [](size_t, size_t) { return true; }).ok);
}

TEST_CASE("exact rational rank, serial vs parallel") {
  using kernels::Rational;

  SUBCASE("known rank with dependent rows") {
    std::vector<std::vector<Rational>> m = {
        {Rational(1), Rational(2), Rational(3)},
        {Rational(2), Rational(4), Rational(6)},   // 2x row 0
        {Rational(1, 2), Rational(0), Rational(1)},
    };
    CHECK(kernels::rational_rank_serial(m) == 2);
    CHECK(kernels::rational_rank_parallel(m) == 2);
  }

  SUBCASE("random matrices") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      size_t rows = 5 + rng() % 20, cols = 5 + rng() % 20;
      std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols));
      for (auto& row : m)
        for (auto& x : row) {
          long long num = static_cast<long long>(rng() % 11) - 5;
          x = Rational(num, 1 + static_cast<long long>(rng() % 4));
        }
      CHECK(kernels::rational_rank_serial(m) ==
            kernels::rational_rank_parallel(m));
    }
  }

  SUBCASE("zero and empty") {
    CHECK(kernels::rational_rank_serial({}) == 0);
    std::vector<std::vector<Rational>> z(3, std::vector<Rational>(4));
    CHECK(kernels::rational_rank_serial(z) == 0);
    CHECK(kernels::rational_rank_parallel(z) == 0);
  }
}
