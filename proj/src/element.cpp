#include "morbit/element.hpp"

#include <sstream>
#include <stdexcept>

namespace morbit {

const Int& Element::value() const {
  if (!is_int_) throw std::logic_error("element: tuple used as integer");
  return value_;
}

const std::vector<Element>& Element::items() const {
  if (is_int_) throw std::logic_error("element: integer used as tuple");
  return items_;
}

const Element& Element::at(size_t i) const {
  const auto& v = items();
  if (i >= v.size()) throw std::out_of_range("element: index out of range");
  return v[i];
}

int Element::compare(const Element& a, const Element& b) {
  if (a.is_int_ != b.is_int_) return a.is_int_ ? -1 : 1;
  if (a.is_int_) {
    if (a.value_ < b.value_) return -1;
    if (b.value_ < a.value_) return 1;
    return 0;
  }
  size_t n = std::min(a.items_.size(), b.items_.size());
  for (size_t i = 0; i < n; ++i) {
    int c = compare(a.items_[i], b.items_[i]);
    if (c != 0) return c;
  }
  if (a.items_.size() != b.items_.size())
    return a.items_.size() < b.items_.size() ? -1 : 1;
  return 0;
}

std::string Element::to_string() const {
  if (is_int_) return value_.str();
  std::ostringstream out;
  out << '[';
  for (size_t i = 0; i < items_.size(); ++i) {
    if (i) out << ',';
    out << items_[i].to_string();
  }
  out << ']';
  return out.str();
}

namespace {

void skip_ws(const std::string& s, size_t& pos) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
    ++pos;
}

Element parse_at(const std::string& s, size_t& pos) {
  skip_ws(s, pos);
  if (pos >= s.size())
    throw std::invalid_argument("element: unexpected end of input");
  if (s[pos] == '[') {
    ++pos;
    std::vector<Element> items;
    skip_ws(s, pos);
    if (pos < s.size() && s[pos] == ']') {
      ++pos;
      return Element(std::move(items));
    }
    while (true) {
      items.push_back(parse_at(s, pos));
      skip_ws(s, pos);
      if (pos < s.size() && s[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < s.size() && s[pos] == ']') {
        ++pos;
        return Element(std::move(items));
      }
      throw std::invalid_argument("element: expected ',' or ']' at position " +
                                  std::to_string(pos));
    }
  }
  size_t start = pos;
  if (s[pos] == '-') ++pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
    ++pos;
  if (pos == start || (s[start] == '-' && pos == start + 1))
    throw std::invalid_argument("element: expected integer at position " +
                                std::to_string(start));
  return Element(Int(s.substr(start, pos - start)));
}

}  // namespace

Element parse_element(const std::string& text) {
  size_t pos = 0;
  Element e = parse_at(text, pos);
  skip_ws(text, pos);
  if (pos != text.size())
    throw std::invalid_argument("element: trailing input at position " +
                                std::to_string(pos));
  return e;
}

}  // namespace morbit
