#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "morbit/decomposition.hpp"
#include "test_util.hpp"

using namespace morbit;
using testutil::canonical_decomposition;

static std::string slurp(const std::string& name) {
  std::ifstream in(std::string(MORBIT_FIXTURE_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST_CASE("figure fixtures validate") {
  for (const char* name :
       {"case_a_b3.json", "case_a_b1.json", "case_b_m2.json", "case_b_m1.json",
        "case_c_m1.json", "case_c_m3.json"}) {
    CAPTURE(name);
    auto dec = decomposition_from_json(slurp(name));
    CHECK(validate_decomposition(dec).ok());
  }
}

TEST_CASE("parity and counting violations are rejected") {
  SUBCASE("e = 0 with even b") {
    auto dec = decomposition_from_json(slurp("bad_parity_even_b.json"));
    auto rep = validate_decomposition(dec);
    CHECK_FALSE(rep.ok());
    bool named = false;
    for (const auto& it : rep.items)
      if (it.name == "e = 0 forces odd b" && !it.ok) named = true;
    CHECK(named);
  }
  SUBCASE("sign flip with odd b") {
    auto dec = decomposition_from_json(slurp("bad_parity_odd_b.json"));
    CHECK_FALSE(validate_decomposition(dec).ok());
    CHECK_THROWS_AS(classify_orbits(dec), std::invalid_argument);
  }
  SUBCASE("fixed disk breaks the orbit count") {
    auto dec = decomposition_from_json(slurp("bad_count.json"));
    // n = 4 cannot equal b(d + e/2) = 3d here; the failure surfaces through
    // the freeness item since a free order-3 action cannot have 4 disks
    // split this way
    CHECK_FALSE(validate_decomposition(dec).ok());
  }
  SUBCASE("n = b(d + e/2) holds on every valid canonical layout") {
    for (long long b : {1, 3, 5})
      for (long long d : {1, 2, 3}) {
        auto dec = canonical_decomposition(
            std::vector<std::string>(d, "Z"), {}, b, d + 1);
        auto rep = validate_decomposition(dec);
        CHECK(rep.ok());
        CHECK(dec.n() == b * d);
      }
  }
}

TEST_CASE("orbit classification on a mixed decomposition") {
  auto dec = decomposition_from_json(slurp("case_c_m1.json"));
  auto orbits = classify_orbits(dec);
  REQUIRE(orbits.size() == 3);
  CHECK(orbits[0].type == OrbitType::T1);
  CHECK(orbits[0].length == 2);
  CHECK(orbits[0].disk_indices == std::vector<long long>{1, 2});
  CHECK(orbits[1].type == OrbitType::T2);
  CHECK(orbits[1].length == 1);
  CHECK(orbits[2].type == OrbitType::T2);
  CHECK(format_expr(orbits[2].representative_group) == "Z x Z");
}

TEST_CASE("sigma application and the star rule") {
  auto dec = canonical_decomposition({}, {"Z"}, 4, 1);  // one T2 orbit, m = 2
  // orbit walk: (1,+) -> (2,+) -> (1,-) -> (2,-) -> (1,+)
  auto s1 = apply_sigma(dec, 1, +1);
  CHECK(s1.first == 2);
  CHECK(s1.second == +1);
  auto s2 = apply_sigma(dec, 2, +1);
  CHECK(s2.first == 1);
  CHECK(s2.second == -1);
  // star rule: acting on the minus copy negates the assigned sign
  auto s3 = apply_sigma(dec, 2, -1);
  CHECK(s3.first == 1);
  CHECK(s3.second == +1);
}

TEST_CASE("eta values count boundary shift") {
  auto dec = canonical_decomposition({"Z"}, {}, 3, 2);
  CHECK(eta_value(dec, dec.c) == dec.b());
  CHECK(eta_value(dec, 0) == 0);
  CHECK(eta_value(dec, dec.a) == 1);
}

TEST_CASE("decomposition JSON round trip") {
  auto dec = canonical_decomposition({"Z", "Wr(Z, 2)"}, {"Z x Z"}, 2, 3, "Z",
                                     "inv");
  auto text = decomposition_to_json(dec);
  auto back = decomposition_from_json(text);
  CHECK(back.a == dec.a);
  CHECK(back.c == dec.c);
  CHECK(back.gamma == "inv");
  CHECK(back.sigma.size() == dec.sigma.size());
  REQUIRE(back.disks.size() == dec.disks.size());
  for (size_t i = 0; i < back.disks.size(); ++i)
    CHECK(equal(back.disks[i].group, dec.disks[i].group));
  CHECK(decomposition_to_json(back) == text);

  CHECK_THROWS(decomposition_from_json("{\"a\": 1}"));
  CHECK_THROWS(decomposition_from_json("not json"));
}

TEST_CASE("random decompositions are valid across seeds") {
  RandomDecompositionOptions opts;
  int t2_seen = 0;
  for (unsigned seed = 0; seed < 60; ++seed) {
    std::mt19937_64 rng(seed);
    auto dec = random_decomposition(rng, opts);
    CAPTURE(seed);
    auto rep = validate_decomposition(dec);
    if (!rep.ok()) MESSAGE(rep.summary());
    REQUIRE(rep.ok());
    for (const auto& o : classify_orbits(dec))
      if (o.type == OrbitType::T2) ++t2_seen;
  }
  CHECK(t2_seen > 0);  // the sampler exercises T2 orbits
}
