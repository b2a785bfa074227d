#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <utility>
#include <vector>

namespace morbit {

using Int = boost::multiprecision::cpp_int;

/// Group element payload: either an integer coordinate or a tuple of
/// sub-elements.  The shape an element must have is dictated by the group
/// expression it lives in (see shape_check in group_ops.hpp); Element itself
/// is plain nested data and serializes as nested JSON arrays, e.g.
/// [[1,0,1],3] for a wreath element (tuple part, shift part).
class Element {
 public:
  Element() : is_int_(false) {}
  explicit Element(Int v) : is_int_(true), value_(std::move(v)) {}
  explicit Element(long long v) : is_int_(true), value_(v) {}
  explicit Element(std::vector<Element> items)
      : is_int_(false), items_(std::move(items)) {}

  bool is_int() const { return is_int_; }
  bool is_tuple() const { return !is_int_; }

  const Int& value() const;
  const std::vector<Element>& items() const;
  size_t size() const { return items().size(); }
  const Element& at(size_t i) const;

  /// Total order: integers before tuples, then by value / lexicographic.
  static int compare(const Element& a, const Element& b);

  std::string to_string() const;

  friend bool operator==(const Element& a, const Element& b) {
    return compare(a, b) == 0;
  }
  friend bool operator!=(const Element& a, const Element& b) {
    return compare(a, b) != 0;
  }
  friend bool operator<(const Element& a, const Element& b) {
    return compare(a, b) < 0;
  }

 private:
  bool is_int_;
  Int value_;
  std::vector<Element> items_;
};

/// Inverse of to_string: an integer literal or nested [e1,e2,...] lists,
/// whitespace tolerated.  Throws std::invalid_argument on malformed input.
Element parse_element(const std::string& text);

}  // namespace morbit
