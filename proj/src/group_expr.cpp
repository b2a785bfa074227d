#include "morbit/group_expr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace morbit {

Involution Involution::factor_perm(std::vector<int> p,
                                   std::vector<Involution> inner) {
  int n = static_cast<int>(p.size());
  if (n == 0) throw std::invalid_argument("factor_perm: empty permutation");
  std::vector<bool> seen(n, false);
  for (int v : p) {
    if (v < 0 || v >= n || seen[v])
      throw std::invalid_argument("factor_perm: not a permutation");
    seen[v] = true;
  }
  for (int i = 0; i < n; ++i)
    if (p[p[i]] != i)
      throw std::invalid_argument("factor_perm: permutation is not involutive");
  if (!inner.empty() && static_cast<int>(inner.size()) != n)
    throw std::invalid_argument("factor_perm: inner size mismatch");
  Involution g;
  g.kind = Kind::FactorPerm;
  g.perm = std::move(p);
  g.inner = std::move(inner);
  return g;
}

Involution Involution::inversion() {
  Involution g;
  g.kind = Kind::Inversion;
  return g;
}

Involution Involution::table_map(std::vector<std::pair<Element, Element>> pairs,
                                 std::string label) {
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    return Element::compare(a.first, b.first) < 0;
  });
  for (size_t i = 0; i + 1 < pairs.size(); ++i)
    if (pairs[i].first == pairs[i + 1].first)
      throw std::invalid_argument("table_map: duplicate domain element");
  Involution g;
  g.kind = Kind::Table;
  g.table = std::move(pairs);
  g.label = std::move(label);
  return g;
}

int compare(const Involution& a, const Involution& b) {
  if (a.kind != b.kind)
    return static_cast<int>(a.kind) < static_cast<int>(b.kind) ? -1 : 1;
  if (a.perm != b.perm) return a.perm < b.perm ? -1 : 1;
  if (a.inner.size() != b.inner.size())
    return a.inner.size() < b.inner.size() ? -1 : 1;
  for (size_t i = 0; i < a.inner.size(); ++i) {
    int c = compare(a.inner[i], b.inner[i]);
    if (c != 0) return c;
  }
  if (a.table.size() != b.table.size())
    return a.table.size() < b.table.size() ? -1 : 1;
  for (size_t i = 0; i < a.table.size(); ++i) {
    int c = Element::compare(a.table[i].first, b.table[i].first);
    if (c != 0) return c;
    c = Element::compare(a.table[i].second, b.table[i].second);
    if (c != 0) return c;
  }
  return 0;
}

namespace {

GroupExpr make(GroupExprNode node) {
  return std::make_shared<const GroupExprNode>(std::move(node));
}

void require_positive(long long m, const char* what) {
  if (m < 1) throw std::invalid_argument(std::string(what) + " must be >= 1");
}

}  // namespace

GroupExpr unit() {
  static const GroupExpr e = [] {
    GroupExprNode n;
    n.kind = ExprKind::Unit;
    return make(std::move(n));
  }();
  return e;
}

GroupExpr int_line() {
  static const GroupExpr e = [] {
    GroupExprNode n;
    n.kind = ExprKind::IntLine;
    return make(std::move(n));
  }();
  return e;
}

GroupExpr cyclic(long long m) {
  require_positive(m, "cyclic modulus");
  GroupExprNode n;
  n.kind = ExprKind::Cyclic;
  n.m = m;
  return make(std::move(n));
}

GroupExpr direct(std::vector<GroupExpr> factors) {
  if (factors.size() < 2)
    throw std::invalid_argument("direct product needs >= 2 factors");
  GroupExprNode n;
  n.kind = ExprKind::Direct;
  n.children = std::move(factors);
  return make(std::move(n));
}

GroupExpr make_direct(std::vector<GroupExpr> factors) {
  if (factors.empty()) return unit();
  if (factors.size() == 1) return factors[0];
  return direct(std::move(factors));
}

namespace {

GroupExpr make_wreath(ExprKind kind, GroupExpr base, long long m, long long n) {
  require_positive(m, "wreath arity m");
  if (kind == ExprKind::WrZZ || kind == ExprKind::WrZZmn)
    require_positive(n, "wreath arity n");
  GroupExprNode node;
  node.kind = kind;
  node.m = m;
  node.n = n;
  node.children = {std::move(base)};
  return make(std::move(node));
}

}  // namespace

GroupExpr wr_z(GroupExpr base, long long m) {
  return make_wreath(ExprKind::WrZ, std::move(base), m, 0);
}

GroupExpr wr_zm(GroupExpr base, long long m) {
  return make_wreath(ExprKind::WrZm, std::move(base), m, 0);
}

GroupExpr wr_zz(GroupExpr base, long long m, long long n) {
  return make_wreath(ExprKind::WrZZ, std::move(base), m, n);
}

GroupExpr wr_zzmn(GroupExpr base, long long m, long long n) {
  return make_wreath(ExprKind::WrZZmn, std::move(base), m, n);
}

namespace {

GroupExpr make_twisted(ExprKind kind, GroupExpr base, GroupExpr h,
                       Involution gamma, long long m) {
  require_positive(m, "twisted wreath arity m");
  GroupExprNode node;
  node.kind = kind;
  node.m = m;
  node.children = {std::move(base), std::move(h)};
  node.gamma = std::move(gamma);
  return make(std::move(node));
}

}  // namespace

GroupExpr twisted_wr_z(GroupExpr base, GroupExpr h, Involution gamma,
                       long long m) {
  return make_twisted(ExprKind::TwistedWrZ, std::move(base), std::move(h),
                      std::move(gamma), m);
}

GroupExpr twisted_wr_zm(GroupExpr base, GroupExpr h, Involution gamma,
                        long long m) {
  return make_twisted(ExprKind::TwistedWrZm, std::move(base), std::move(h),
                      std::move(gamma), m);
}

int compare(const GroupExpr& a, const GroupExpr& b) {
  if (a->kind != b->kind)
    return static_cast<int>(a->kind) < static_cast<int>(b->kind) ? -1 : 1;
  if (a->m != b->m) return a->m < b->m ? -1 : 1;
  if (a->n != b->n) return a->n < b->n ? -1 : 1;
  if (a->children.size() != b->children.size())
    return a->children.size() < b->children.size() ? -1 : 1;
  for (size_t i = 0; i < a->children.size(); ++i) {
    int c = compare(a->children[i], b->children[i]);
    if (c != 0) return c;
  }
  return compare(a->gamma, b->gamma);
}

bool equal(const GroupExpr& a, const GroupExpr& b) { return compare(a, b) == 0; }

namespace {

std::string format_gamma_plain(const Involution& g) {
  switch (g.kind) {
    case Involution::Kind::Identity:
      return "id";
    case Involution::Kind::Inversion:
      return "inv";
    case Involution::Kind::FactorPerm: {
      std::ostringstream out;
      out << "perm[";
      for (size_t i = 0; i < g.perm.size(); ++i) {
        if (i) out << ",";
        out << g.perm[i] + 1;
      }
      out << "]";
      return out.str();
    }
    case Involution::Kind::Table:
      return g.label.empty() ? "table" : g.label;
  }
  return "id";
}

std::string plain(const GroupExpr& e, bool inside_direct) {
  std::ostringstream out;
  switch (e->kind) {
    case ExprKind::Unit:
      return "1";
    case ExprKind::IntLine:
      return "Z";
    case ExprKind::Cyclic:
      out << "Z" << e->m;
      return out.str();
    case ExprKind::Direct: {
      std::string s;
      for (size_t i = 0; i < e->children.size(); ++i) {
        if (i) s += " x ";
        s += plain(e->children[i], true);
      }
      if (inside_direct) return "(" + s + ")";
      return s;
    }
    case ExprKind::WrZ:
      out << "Wr(" << plain(e->children[0], false) << ", " << e->m << ")";
      return out.str();
    case ExprKind::WrZm:
      out << "WrM(" << plain(e->children[0], false) << ", " << e->m << ")";
      return out.str();
    case ExprKind::WrZZ:
      out << "Wr2(" << plain(e->children[0], false) << ", " << e->m << ", "
          << e->n << ")";
      return out.str();
    case ExprKind::WrZZmn:
      out << "Wr2M(" << plain(e->children[0], false) << ", " << e->m << ", "
          << e->n << ")";
      return out.str();
    case ExprKind::TwistedWrZ:
      out << "TwWr(" << plain(e->children[0], false) << ", "
          << plain(e->children[1], false) << ", " << format_gamma_plain(e->gamma)
          << ", " << e->m << ")";
      return out.str();
    case ExprKind::TwistedWrZm:
      out << "TwWrM(" << plain(e->children[0], false) << ", "
          << plain(e->children[1], false) << ", " << format_gamma_plain(e->gamma)
          << ", " << e->m << ")";
      return out.str();
  }
  return "?";
}

bool latex_atom(const GroupExpr& e) {
  return e->kind == ExprKind::Unit || e->kind == ExprKind::IntLine ||
         e->kind == ExprKind::Cyclic;
}

std::string latex(const GroupExpr& e, bool inside_direct);

std::string latex_operand(const GroupExpr& e) {
  if (latex_atom(e)) return latex(e, false);
  return "\\left(" + latex(e, false) + "\\right)";
}

std::string latex(const GroupExpr& e, bool inside_direct) {
  std::ostringstream out;
  switch (e->kind) {
    case ExprKind::Unit:
      return "\\mathbb{1}";
    case ExprKind::IntLine:
      return "\\mathbb{Z}";
    case ExprKind::Cyclic:
      out << "\\mathbb{Z}_{" << e->m << "}";
      return out.str();
    case ExprKind::Direct: {
      std::string s;
      for (size_t i = 0; i < e->children.size(); ++i) {
        if (i) s += "\\times ";
        s += latex(e->children[i], true);
      }
      if (inside_direct) return "\\left(" + s + "\\right)";
      return s;
    }
    case ExprKind::WrZ:
      out << latex_operand(e->children[0]) << "\\wr_{" << e->m << "}\\mathbb{Z}";
      return out.str();
    case ExprKind::WrZm:
      out << latex_operand(e->children[0]) << "\\wr_{" << e->m << "}\\mathbb{Z}_{"
          << e->m << "}";
      return out.str();
    case ExprKind::WrZZ:
      out << latex_operand(e->children[0]) << "\\wr_{" << e->m << "," << e->n
          << "}\\mathbb{Z}^{2}";
      return out.str();
    case ExprKind::WrZZmn:
      out << latex_operand(e->children[0]) << "\\wr_{" << e->m << "," << e->n
          << "}\\left(\\mathbb{Z}_{" << e->m << "}\\times\\mathbb{Z}_{" << e->n
          << "}\\right)";
      return out.str();
    case ExprKind::TwistedWrZ:
    case ExprKind::TwistedWrZm: {
      std::string gname = e->gamma.kind == Involution::Kind::Identity
                              ? "\\mathrm{id}"
                              : "\\gamma";
      out << "\\left(" << latex(e->children[0], false) << ","
          << latex(e->children[1], false) << "\\right)\\wr_{" << gname << ","
          << e->m << "}";
      if (e->kind == ExprKind::TwistedWrZ)
        out << "\\mathbb{Z}";
      else
        out << "\\mathbb{Z}_{" << 2 * e->m << "}";
      return out.str();
    }
  }
  return "?";
}

}  // namespace

std::string format_expr(const GroupExpr& e, ExprStyle style) {
  return style == ExprStyle::Plain ? plain(e, false) : latex(e, false);
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  GroupExpr parse() {
    GroupExpr e = parse_product();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ExprParseError(msg, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_]))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  long long parse_int() {
    skip_ws();
    size_t start = pos_;
    bool neg = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    if (pos_ >= text_.size() || !std::isdigit((unsigned char)text_[pos_]))
      fail("expected integer");
    long long v = 0;
    while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > (1LL << 40)) {
        pos_ = start;
        fail("integer literal too large");
      }
      ++pos_;
    }
    return neg ? -v : v;
  }

  std::string peek_word() {
    skip_ws();
    size_t p = pos_;
    std::string w;
    while (p < text_.size() && (std::isalnum((unsigned char)text_[p]))) {
      w += text_[p];
      ++p;
    }
    return w;
  }

  void consume_word(const std::string& w) {
    skip_ws();
    pos_ += w.size();
  }

  Involution parse_gamma() {
    std::string w = peek_word();
    if (w == "id") {
      consume_word(w);
      return Involution::identity();
    }
    if (w == "inv") {
      consume_word(w);
      return Involution::inversion();
    }
    if (w == "perm") {
      consume_word(w);
      expect('[');
      std::vector<int> images;
      while (true) {
        long long v = parse_int();
        if (v < 1) fail("perm images are 1-based");
        images.push_back(static_cast<int>(v - 1));
        if (eat(']')) break;
        expect(',');
      }
      try {
        return Involution::factor_perm(std::move(images));
      } catch (const std::invalid_argument& ex) {
        fail(ex.what());
      }
    }
    fail("expected gamma (id, inv or perm[...])");
  }

  GroupExpr parse_product() {
    std::vector<GroupExpr> factors;
    factors.push_back(parse_term());
    while (true) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == 'x' &&
          (pos_ + 1 == text_.size() ||
           !std::isalnum((unsigned char)text_[pos_ + 1]))) {
        ++pos_;
        factors.push_back(parse_term());
      } else {
        break;
      }
    }
    return make_direct(std::move(factors));
  }

  GroupExpr parse_call(ExprKind kind) {
    expect('(');
    GroupExpr base = parse_product();
    GroupExpr h;
    Involution gamma;
    if (kind == ExprKind::TwistedWrZ || kind == ExprKind::TwistedWrZm) {
      expect(',');
      h = parse_product();
      expect(',');
      gamma = parse_gamma();
    }
    expect(',');
    long long m = parse_int();
    long long n = 0;
    if (kind == ExprKind::WrZZ || kind == ExprKind::WrZZmn) {
      expect(',');
      n = parse_int();
    }
    expect(')');
    try {
      switch (kind) {
        case ExprKind::WrZ:
          return wr_z(base, m);
        case ExprKind::WrZm:
          return wr_zm(base, m);
        case ExprKind::WrZZ:
          return wr_zz(base, m, n);
        case ExprKind::WrZZmn:
          return wr_zzmn(base, m, n);
        case ExprKind::TwistedWrZ:
          return twisted_wr_z(base, h, gamma, m);
        case ExprKind::TwistedWrZm:
          return twisted_wr_zm(base, h, gamma, m);
        default:
          break;
      }
    } catch (const std::invalid_argument& ex) {
      fail(ex.what());
    }
    fail("internal parse error");
  }

  GroupExpr parse_term() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (eat('(')) {
      GroupExpr e = parse_product();
      expect(')');
      return e;
    }
    char c = text_[pos_];
    if (std::isdigit((unsigned char)c)) {
      size_t at = pos_;
      long long v = parse_int();
      if (v != 1) throw ExprParseError("expected group expression", at);
      return unit();
    }
    std::string w = peek_word();
    if (w == "Wr") {
      consume_word(w);
      return parse_call(ExprKind::WrZ);
    }
    if (w == "WrM") {
      consume_word(w);
      return parse_call(ExprKind::WrZm);
    }
    if (w == "Wr2") {
      consume_word(w);
      return parse_call(ExprKind::WrZZ);
    }
    if (w == "Wr2M") {
      consume_word(w);
      return parse_call(ExprKind::WrZZmn);
    }
    if (w == "TwWr") {
      consume_word(w);
      return parse_call(ExprKind::TwistedWrZ);
    }
    if (w == "TwWrM") {
      consume_word(w);
      return parse_call(ExprKind::TwistedWrZm);
    }
    if (w == "Z") {
      consume_word(w);
      return int_line();
    }
    if (!w.empty() && w[0] == 'Z') {
      std::string digits = w.substr(1);
      if (!digits.empty() &&
          std::all_of(digits.begin(), digits.end(),
                      [](char d) { return std::isdigit((unsigned char)d); })) {
        if (digits.size() > 9) fail("cyclic modulus too large");
        long long m = std::stoll(digits);
        if (m < 1) fail("cyclic modulus must be >= 1");
        consume_word(w);
        return cyclic(m);
      }
    }
    fail("expected group expression");
  }

  const std::string& text_;
  size_t pos_ = 0;
};

}  // namespace

GroupExpr parse_expr(const std::string& text) { return Parser(text).parse(); }

namespace {

bool is_unit_expr(const GroupExpr& e) { return e->kind == ExprKind::Unit; }

}  // namespace

GroupExpr normalize(const GroupExpr& e) {
  switch (e->kind) {
    case ExprKind::Unit:
    case ExprKind::IntLine:
    case ExprKind::Cyclic:
      return e;
    case ExprKind::Direct: {
      std::vector<GroupExpr> flat;
      for (const auto& c : e->children) {
        GroupExpr nc = normalize(c);
        if (nc->kind == ExprKind::Direct)
          flat.insert(flat.end(), nc->children.begin(), nc->children.end());
        else if (!is_unit_expr(nc))
          flat.push_back(nc);
      }
      std::sort(flat.begin(), flat.end(),
                [](const GroupExpr& a, const GroupExpr& b) {
                  return compare(a, b) < 0;
                });
      return make_direct(std::move(flat));
    }
    case ExprKind::WrZ: {
      GroupExpr base = normalize(e->children[0]);
      if (e->m == 1) {
        if (is_unit_expr(base)) return int_line();
        return normalize(direct({base, int_line()}));
      }
      return wr_z(base, e->m);
    }
    case ExprKind::WrZm:
      return wr_zm(normalize(e->children[0]), e->m);
    case ExprKind::WrZZ: {
      GroupExpr base = normalize(e->children[0]);
      if (e->n == 1) return normalize(direct({wr_z(base, e->m), int_line()}));
      return wr_zz(base, e->m, e->n);
    }
    case ExprKind::WrZZmn:
      return wr_zzmn(normalize(e->children[0]), e->m, e->n);
    case ExprKind::TwistedWrZ: {
      GroupExpr base = normalize(e->children[0]);
      GroupExpr h = normalize(e->children[1]);
      if (is_unit_expr(h)) return normalize(wr_z(base, 2 * e->m));
      return twisted_wr_z(base, h, e->gamma, e->m);
    }
    case ExprKind::TwistedWrZm:
      return twisted_wr_zm(normalize(e->children[0]), normalize(e->children[1]),
                           e->gamma, e->m);
  }
  return e;
}

namespace {

bool in_class_g_normalized(const GroupExpr& e) {
  switch (e->kind) {
    case ExprKind::Unit:
    case ExprKind::IntLine:
      return true;
    case ExprKind::Direct:
      return std::all_of(e->children.begin(), e->children.end(),
                         in_class_g_normalized);
    case ExprKind::WrZ:
      return in_class_g_normalized(e->children[0]);
    default:
      return false;
  }
}

}  // namespace

bool is_in_class_G(const GroupExpr& e) {
  return in_class_g_normalized(normalize(e));
}

}  // namespace morbit
