#include <doctest.h>

#include "morbit/group_expr.hpp"

using namespace morbit;

static std::string norm(const std::string& s) {
  return format_expr(normalize(parse_expr(s)));
}

TEST_CASE("expression parse and format round trip") {
  for (const char* s : {
           "1", "Z", "Z2", "Z12", "Z2 x Z3", "Z2 x (Z3 x Z2)",
           "Wr(Z, 3)", "WrM(Z2, 4)", "Wr2(Z2, 2, 3)", "Wr2M(Z3, 2, 2)",
           "TwWr(Z2, Z3, id, 1)", "TwWr(Z2, Z3, inv, 2)",
           "TwWrM(Z2, Z3 x Z3, perm[2,1], 2)", "Wr(Z x Z2, 2)",
       }) {
    CAPTURE(s);
    GroupExpr e = parse_expr(s);
    CHECK(format_expr(e) == s);
    CHECK(equal(parse_expr(format_expr(e)), e));
  }
}

TEST_CASE("expression parse rejects malformed input") {
  for (const char* s : {"", "Z0", "Wr(Z)", "Wr(Z, 2", "Z2 x", "Q8",
                        "TwWr(Z2, Z3, wat, 1)", "Wr(Z, -1)", "Z2 Z3"}) {
    CAPTURE(s);
    CHECK_THROWS_AS(parse_expr(s), ExprParseError);
  }
}

TEST_CASE("normalize: direct product flattening, unit removal, sorting") {
  CHECK(norm("(Z3 x Z2) x (1 x Z2)") == "Z2 x Z2 x Z3");
  CHECK(norm("Z2 x 1") == "Z2");
  CHECK(norm("1 x 1") == "1");
  CHECK(norm("Z x Z2 x Z") == "Z x Z x Z2");
}

TEST_CASE("normalize: wreath arity-one rewrites") {
  CHECK(norm("Wr(Z2, 1)") == "Z x Z2");
  CHECK(norm("Wr(1, 1)") == "Z");
  CHECK(norm("Wr2(Z2, 3, 1)") == "Z x Wr(Z2, 3)");
  CHECK(norm("Wr2(Z2, 1, 1)") == "Z x Z x Z2");
  // only the second axis collapses; m = 1 with n > 1 is not a listed rewrite
  CHECK(norm("Wr2(Z2, 1, 3)") == "Wr2(Z2, 1, 3)");
  // finite forms never rewrite
  CHECK(norm("WrM(Z2, 1)") == "WrM(Z2, 1)");
  CHECK(norm("Wr2M(Z2, 2, 1)") == "Wr2M(Z2, 2, 1)");
}

TEST_CASE("normalize: twisted products with trivial H unwind to plain wreaths") {
  CHECK(norm("TwWr(Z2, 1, id, 2)") == "Wr(Z2, 4)");
  CHECK(norm("TwWr(Z2, 1, inv, 1)") == "Wr(Z2, 2)");
  CHECK(norm("TwWr(1, 1, id, 2)") == "Wr(1, 4)");
  // nontrivial H survives, involution and all
  CHECK(norm("TwWr(Z2, Z3, id, 2)") == "TwWr(Z2, Z3, id, 2)");
  CHECK(norm("TwWrM(Z3, 1, inv, 1)") == "TwWrM(Z3, 1, inv, 1)");
}

TEST_CASE("normalize recurses into bases") {
  CHECK(norm("Wr(Z2 x 1, 2)") == "Wr(Z2, 2)");
  CHECK(norm("Wr(Wr(Z2,1), 2)") == "Wr(Z x Z2, 2)");
  CHECK(norm("TwWr(Z2 x Z3, 1, inv, 1)") == "Wr(Z2 x Z3, 2)");
}

TEST_CASE("normalize is idempotent") {
  for (const char* s : {"Wr(Z2, 1)", "TwWr(Z2, 1, id, 2)",
                        "(Z3 x Z2) x (1 x Z2)", "Wr2(Z2, 1, 1)",
                        "Wr(Wr(Z2,1) x 1, 3)"}) {
    CAPTURE(s);
    GroupExpr once = normalize(parse_expr(s));
    CHECK(equal(normalize(once), once));
  }
}

TEST_CASE("class-G membership") {
  // generated from the unit group by direct products and Wr(-, m)
  CHECK(is_in_class_G(parse_expr("1")));
  CHECK(is_in_class_G(parse_expr("Z")));
  CHECK(is_in_class_G(parse_expr("Z x Z")));
  CHECK(is_in_class_G(parse_expr("Wr(Z x Wr(Z, 2), 3)")));
  CHECK_FALSE(is_in_class_G(parse_expr("Z2")));
  CHECK_FALSE(is_in_class_G(parse_expr("WrM(Z, 2)")));
  CHECK_FALSE(is_in_class_G(parse_expr("TwWr(Z, Z, id, 1)")));
  CHECK_FALSE(is_in_class_G(parse_expr("Z x TwWr(1, Z, id, 2)")));

  SUBCASE("the large showcase expression") {
    std::vector<GroupExpr> z3(3, int_line()), z17(17, int_line());
    GroupExpr inner = direct({wr_z(direct(z3), 5), wr_z(direct(z17), 2)});
    CHECK(is_in_class_G(wr_z(inner, 11)));
  }
}

TEST_CASE("latex formatting") {
  CHECK(format_expr(parse_expr("Z2"), ExprStyle::Latex) == "\\mathbb{Z}_{2}");
  CHECK(format_expr(parse_expr("Wr(Z, 3)"), ExprStyle::Latex) ==
        "\\mathbb{Z}\\wr_{3}\\mathbb{Z}");
  CHECK(format_expr(parse_expr("Z x Z2"), ExprStyle::Latex) ==
        "\\mathbb{Z}\\times \\mathbb{Z}_{2}");
  // direct bases get wrapped before the wreath subscript
  std::string tw = format_expr(parse_expr("Wr(Z x Z, 2)"), ExprStyle::Latex);
  CHECK(tw.find("\\left(") != std::string::npos);
  CHECK(tw.find("\\wr_{2}") != std::string::npos);
}

TEST_CASE("involution comparison and labels") {
  CHECK(compare(Involution::identity(), Involution::identity()) == 0);
  CHECK(compare(Involution::identity(), Involution::inversion()) != 0);
  auto p1 = Involution::factor_perm({1, 0});
  auto p2 = Involution::factor_perm({1, 0});
  CHECK(compare(p1, p2) == 0);
}
