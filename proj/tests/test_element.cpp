#include <doctest.h>

#include "morbit/element.hpp"

using morbit::Element;
using morbit::Int;
using morbit::parse_element;

TEST_CASE("element basics and ordering") {
  Element i(5);
  Element j(Int(-3));
  CHECK(i.is_int());
  CHECK(i.value() == 5);
  CHECK_FALSE(i.is_tuple());

  Element t(std::vector<Element>{Element(1), Element(2)});
  CHECK(t.is_tuple());
  CHECK(t.size() == 2);
  CHECK(t.at(1).value() == 2);

  // integers sort before tuples, tuples lexicographically
  CHECK(Element::compare(j, i) < 0);
  CHECK(Element::compare(i, t) < 0);
  Element t2(std::vector<Element>{Element(1), Element(3)});
  CHECK(t < t2);
  Element t3(std::vector<Element>{Element(1)});
  CHECK(t3 < t);  // shorter prefix first

  CHECK(i != j);
  CHECK(t == Element(std::vector<Element>{Element(1), Element(2)}));

  CHECK_THROWS_AS(i.items(), std::logic_error);
  CHECK_THROWS_AS(t.value(), std::logic_error);
  CHECK_THROWS_AS(t.at(5), std::out_of_range);
}

TEST_CASE("element string round trip") {
  Element e(std::vector<Element>{
      Element(std::vector<Element>{Element(1), Element(-2), Element(3)}),
      Element(7)});
  CHECK(e.to_string() == "[[1,-2,3],7]");
  CHECK(parse_element(e.to_string()) == e);
  CHECK(parse_element(" [ [1, -2,3 ] , 7 ] ") == e);
  CHECK(parse_element("42").value() == 42);
  CHECK(parse_element("[]").size() == 0);

  CHECK_THROWS_AS(parse_element(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_element("[1,"), std::invalid_argument);
  CHECK_THROWS_AS(parse_element("[1] junk"), std::invalid_argument);
  CHECK_THROWS_AS(parse_element("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_element("-"), std::invalid_argument);
}

TEST_CASE("element parse handles big integers exactly") {
  auto e = parse_element("123456789012345678901234567890");
  CHECK(e.value() == Int("123456789012345678901234567890"));
}
