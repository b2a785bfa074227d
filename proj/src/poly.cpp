#include "morbit/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "morbit/kernels.hpp"

namespace morbit {

namespace {

using Uni = std::vector<Rational>;  // univariate, index = t exponent

void trim(Uni& u) {
  while (!u.empty() && u.back() == 0) u.pop_back();
}

long long udeg(const Uni& u) { return static_cast<long long>(u.size()) - 1; }

Uni umul(const Uni& a, const Uni& b) {
  if (a.empty() || b.empty()) return {};
  Uni r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

Uni usub(Uni a, const Uni& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

Uni uscale(Uni a, const Rational& s) {
  for (auto& c : a) c *= s;
  trim(a);
  return a;
}

// Division with remainder: a = q*b + r, deg r < deg b.
std::pair<Uni, Uni> udivmod(Uni a, const Uni& b) {
  if (b.empty()) throw std::invalid_argument("univariate division by zero");
  Uni q;
  while (udeg(a) >= udeg(b)) {
    long long shift = udeg(a) - udeg(b);
    Rational f = a.back() / b.back();
    if (static_cast<long long>(q.size()) <= shift)
      q.resize(shift + 1, Rational(0));
    q[shift] += f;
    Uni sub(shift, Rational(0));
    sub.insert(sub.end(), b.begin(), b.end());
    a = usub(std::move(a), uscale(sub, f));
  }
  trim(q);
  return {q, a};
}

// Extended Euclid: returns (g, p, q) with a*p + b*q = g, g the gcd.
struct XGcd {
  Uni g, p, q;
};

XGcd xgcd(Uni a, Uni b) {
  Uni r0 = std::move(a), r1 = std::move(b);
  trim(r0);
  trim(r1);
  Uni s0{Rational(1)}, s1{}, t0{}, t1{Rational(1)};
  while (!r1.empty()) {
    auto [q, r] = udivmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Uni s2 = usub(s0, umul(q, s1));
    s0 = std::move(s1);
    s1 = std::move(s2);
    Uni t2 = usub(t0, umul(q, t1));
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  return {std::move(r0), std::move(s0), std::move(t0)};
}

}  // namespace

HomogeneousPoly::HomogeneousPoly() : degree_(0), c_{Rational(0)} {}

HomogeneousPoly::HomogeneousPoly(long long degree, std::vector<Rational> coeffs)
    : degree_(degree), c_(std::move(coeffs)) {
  if (degree_ < 0) throw std::invalid_argument("negative degree");
  if (c_.size() != static_cast<size_t>(degree_) + 1)
    throw std::invalid_argument("coefficient count must be degree+1");
}

HomogeneousPoly HomogeneousPoly::zero(long long degree) {
  return HomogeneousPoly(degree,
                         std::vector<Rational>(degree + 1, Rational(0)));
}

HomogeneousPoly HomogeneousPoly::monomial(long long xexp, long long yexp,
                                          Rational c) {
  HomogeneousPoly p = zero(xexp + yexp);
  p.c_[yexp] = std::move(c);
  return p;
}

Rational HomogeneousPoly::coeff(long long xexp, long long yexp) const {
  if (xexp < 0 || yexp < 0 || xexp + yexp != degree_) return Rational(0);
  return c_[yexp];
}

bool HomogeneousPoly::is_zero() const {
  return std::all_of(c_.begin(), c_.end(),
                     [](const Rational& r) { return r == 0; });
}

HomogeneousPoly HomogeneousPoly::operator+(const HomogeneousPoly& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (degree_ != o.degree_)
    throw std::invalid_argument("adding polynomials of different degrees");
  std::vector<Rational> c(c_);
  for (size_t i = 0; i < c.size(); ++i) c[i] += o.c_[i];
  return HomogeneousPoly(degree_, std::move(c));
}

HomogeneousPoly HomogeneousPoly::operator-(const HomogeneousPoly& o) const {
  return *this + (-o);
}

HomogeneousPoly HomogeneousPoly::operator*(const HomogeneousPoly& o) const {
  if (is_zero() || o.is_zero()) return zero(0);
  std::vector<Rational> c(degree_ + o.degree_ + 1, Rational(0));
  for (long long i = 0; i <= degree_; ++i)
    for (long long j = 0; j <= o.degree_; ++j) c[i + j] += c_[i] * o.c_[j];
  return HomogeneousPoly(degree_ + o.degree_, std::move(c));
}

HomogeneousPoly HomogeneousPoly::operator*(const Rational& s) const {
  std::vector<Rational> c(c_);
  for (auto& v : c) v *= s;
  return HomogeneousPoly(degree_, std::move(c));
}

HomogeneousPoly HomogeneousPoly::operator-() const {
  return *this * Rational(-1);
}

bool HomogeneousPoly::operator==(const HomogeneousPoly& o) const {
  if (is_zero() && o.is_zero()) return true;
  return degree_ == o.degree_ && c_ == o.c_;
}

HomogeneousPoly HomogeneousPoly::dx() const {
  if (degree_ == 0) throw std::invalid_argument("partial of a constant");
  std::vector<Rational> c(degree_, Rational(0));
  // d/dx of x^(d-j) y^j is (d-j) x^(d-1-j) y^j
  for (long long j = 0; j < degree_; ++j)
    c[j] = c_[j] * Rational(degree_ - j);
  return HomogeneousPoly(degree_ - 1, std::move(c));
}

HomogeneousPoly HomogeneousPoly::dy() const {
  if (degree_ == 0) throw std::invalid_argument("partial of a constant");
  std::vector<Rational> c(degree_, Rational(0));
  for (long long j = 1; j <= degree_; ++j)
    c[j - 1] = c_[j] * Rational(j);
  return HomogeneousPoly(degree_ - 1, std::move(c));
}

HomogeneousPoly HomogeneousPoly::swap_xy() const {
  std::vector<Rational> c(c_.rbegin(), c_.rend());
  return HomogeneousPoly(degree_, std::move(c));
}

long long HomogeneousPoly::x_multiplicity() const {
  // x exponent of coefficient slot j is degree-j; the multiplicity is the
  // minimum over nonzero slots, i.e. degree minus the largest nonzero j.
  for (long long j = degree_; j >= 0; --j)
    if (c_[j] != 0) return degree_ - j;
  return degree_ + 1;  // zero polynomial
}

HomogeneousPoly HomogeneousPoly::divide_x_power(long long s) const {
  if (s == 0) return *this;
  if (x_multiplicity() < s)
    throw std::invalid_argument("x-power division is not exact");
  std::vector<Rational> c(c_.begin(), c_.end() - 0);
  c.resize(degree_ + 1 - s);
  for (long long j = 0; j <= degree_ - s; ++j) c[j] = c_[j];
  return HomogeneousPoly(degree_ - s, std::move(c));
}

HomogeneousPoly HomogeneousPoly::times_x_power(long long s) const {
  std::vector<Rational> c(c_);
  c.resize(degree_ + s + 1, Rational(0));
  return HomogeneousPoly(degree_ + s, std::move(c));
}

std::string HomogeneousPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (long long j = 0; j <= degree_; ++j) {
    const Rational& c = c_[j];
    if (c == 0) continue;
    Rational a = c;
    bool negative = a < 0;
    if (negative) a = -a;
    if (first) {
      if (negative) out << "-";
      first = false;
    } else {
      out << (negative ? " - " : " + ");
    }
    long long xe = degree_ - j, ye = j;
    bool has_vars = xe > 0 || ye > 0;
    if (a != 1 || !has_vars) {
      out << a;
      if (has_vars) out << "*";
    }
    if (xe > 0) {
      out << "x";
      if (xe > 1) out << "^" << xe;
      if (ye > 0) out << "*";
    }
    if (ye > 0) {
      out << "y";
      if (ye > 1) out << "^" << ye;
    }
  }
  return out.str();
}

namespace {

struct PolyParser {
  const std::string& s;
  size_t at = 0;

  explicit PolyParser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (at < s.size() && std::isspace(static_cast<unsigned char>(s[at])))
      ++at;
  }
  bool peek(char c) {
    skip_ws();
    return at < s.size() && s[at] == c;
  }
  bool eat(char c) {
    if (peek(c)) {
      ++at;
      return true;
    }
    return false;
  }

  boost::multiprecision::cpp_int parse_int() {
    skip_ws();
    size_t start = at;
    while (at < s.size() && std::isdigit(static_cast<unsigned char>(s[at])))
      ++at;
    if (at == start)
      throw std::invalid_argument("expected a number at position " +
                                  std::to_string(start));
    return boost::multiprecision::cpp_int(s.substr(start, at - start));
  }

  // One term: optional rational coefficient and variable powers, joined by
  // optional '*'.  Returns (coefficient, x exponent, y exponent).
  void parse_term(Rational& coef, long long& xe, long long& ye) {
    coef = Rational(1);
    xe = ye = 0;
    bool any = false;
    while (true) {
      skip_ws();
      if (at >= s.size()) break;
      char c = s[at];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        auto num = parse_int();
        if (eat('/')) {
          auto den = parse_int();
          if (den == 0) throw std::invalid_argument("zero denominator");
          coef *= Rational(num, den);
        } else {
          coef *= Rational(num);
        }
        any = true;
      } else if (c == 'x' || c == 'y') {
        ++at;
        long long e = 1;
        if (eat('^'))
          e = parse_int().convert_to<long long>();
        if (e < 0) throw std::invalid_argument("negative exponent");
        (c == 'x' ? xe : ye) += e;
        any = true;
      } else {
        break;
      }
      skip_ws();
      if (at < s.size() && s[at] == '*') {
        ++at;
        continue;
      }
      // juxtaposition like "3x" or "x y" continues the term
      skip_ws();
      if (at < s.size() &&
          (s[at] == 'x' || s[at] == 'y' ||
           std::isdigit(static_cast<unsigned char>(s[at]))))
        continue;
      break;
    }
    if (!any)
      throw std::invalid_argument("expected a term at position " +
                                  std::to_string(at));
  }
};

}  // namespace

HomogeneousPoly HomogeneousPoly::parse(const std::string& text) {
  PolyParser p(text);
  struct Term {
    Rational c;
    long long xe, ye;
  };
  std::vector<Term> terms;
  bool first = true;
  while (true) {
    p.skip_ws();
    if (p.at >= p.s.size()) break;
    Rational sign(1);
    if (p.eat('+')) {
    } else if (p.eat('-')) {
      sign = Rational(-1);
    } else if (!first) {
      throw std::invalid_argument("expected '+' or '-' at position " +
                                  std::to_string(p.at));
    }
    Rational c;
    long long xe, ye;
    p.parse_term(c, xe, ye);
    terms.push_back({sign * c, xe, ye});
    first = false;
  }
  if (terms.empty()) throw std::invalid_argument("empty polynomial");
  long long degree = terms[0].xe + terms[0].ye;
  for (const auto& t : terms)
    if (t.xe + t.ye != degree)
      throw std::invalid_argument(
          "polynomial is not homogeneous: term degrees " +
          std::to_string(degree) + " and " + std::to_string(t.xe + t.ye));
  HomogeneousPoly out = zero(degree);
  for (const auto& t : terms) out.c_[t.ye] += t.c;
  return out;
}

std::pair<HomogeneousPoly, HomogeneousPoly> partials(
    const HomogeneousPoly& g) {
  if (g.degree() == 0 || g.is_zero())
    throw std::invalid_argument("partials need a nonconstant polynomial");
  return {g.dx(), g.dy()};
}

namespace {

Uni dehomogenize(const HomogeneousPoly& f) {
  // f(1, t): coefficient slot j (of x^(d-j) y^j) becomes the t^j coefficient
  Uni u(f.coeffs());
  trim(u);
  return u;
}

HomogeneousPoly homogenize(const Uni& u, long long degree) {
  // u(t) -> x^degree * u(y/x); requires deg u <= degree
  if (u.empty()) return HomogeneousPoly::zero(0);
  if (udeg(u) > degree)
    throw std::invalid_argument("homogenization degree too small");
  std::vector<Rational> c(degree + 1, Rational(0));
  for (size_t j = 0; j < u.size(); ++j) c[j] = u[j];
  return HomogeneousPoly(degree, std::move(c));
}

}  // namespace

bool is_squarefree(const HomogeneousPoly& g) {
  if (g.is_zero()) throw std::invalid_argument("zero polynomial");
  if (g.degree() < 1) throw std::invalid_argument("constant polynomial");
  if (g.degree() == 1) return true;
  HomogeneousPoly A = g.dx(), B = g.dy();
  long long sa = A.is_zero() ? g.degree() : A.x_multiplicity();
  long long sb = B.is_zero() ? g.degree() : B.x_multiplicity();
  if (sa > 0 && sb > 0) return false;  // common factor x
  Uni alpha = dehomogenize(A), beta = dehomogenize(B);
  auto gcd = xgcd(alpha, beta).g;
  return udeg(gcd) == 0;
}

JacobianCertificate jacobian_certificate(const HomogeneousPoly& g,
                                         char variable) {
  if (variable != 'x' && variable != 'y')
    throw std::invalid_argument("variable must be 'x' or 'y'");
  if (variable == 'y') {
    // Mirror: a certificate for g(y,x) in x maps back with P and Q swapped
    // (the partials swap roles) and every polynomial reflected.
    JacobianCertificate c = jacobian_certificate(g.swap_xy(), 'x');
    JacobianCertificate out;
    out.variable = 'y';
    out.m = c.m;
    out.P = c.Q.swap_xy();
    out.Q = c.P.swap_xy();
    out.alpha = c.alpha;
    out.beta = c.beta;
    out.p = c.p;
    out.q = c.q;
    return out;
  }
  if (g.is_zero() || g.degree() < 1)
    throw std::invalid_argument("certificate needs a nonconstant polynomial");
  HomogeneousPoly A = g.dx(), B = g.dy();
  if (A.is_zero() || B.is_zero())
    throw std::runtime_error(
        "certificate failed: a partial vanishes identically (repeated "
        "factor)");
  long long sa = A.x_multiplicity(), sb = B.x_multiplicity();
  if (sa > 0 && sb > 0)
    throw std::runtime_error(
        "certificate failed: partials share the factor x");
  Uni alpha = dehomogenize(A), beta = dehomogenize(B);
  XGcd e = xgcd(alpha, beta);
  if (udeg(e.g) != 0)
    throw std::runtime_error(
        "certificate failed: partials have a nonconstant common factor "
        "(polynomial is not squarefree)");
  Rational lead = e.g[0];
  Uni p = uscale(e.p, Rational(1) / lead);
  Uni q = uscale(e.q, Rational(1) / lead);
  Uni ap = umul(alpha, p), bq = umul(beta, q);
  long long m0 = std::max<long long>({udeg(ap), udeg(bq), 0});
  // alpha*p + beta*q = 1 homogenizes at degree m0 to
  // Abar*pbar + Bbar*qbar = x^m0 with A = x^sa * Abar, B = x^sb * Bbar.
  long long da = udeg(alpha), db = udeg(beta);
  HomogeneousPoly pbar = p.empty() ? HomogeneousPoly::zero(0)
                                   : homogenize(p, m0 - da);
  HomogeneousPoly qbar = q.empty() ? HomogeneousPoly::zero(0)
                                   : homogenize(q, m0 - db);
  JacobianCertificate out;
  out.variable = 'x';
  out.m = m0 + sa + sb;
  out.P = p.empty() ? HomogeneousPoly::zero(0) : pbar.times_x_power(sb);
  out.Q = q.empty() ? HomogeneousPoly::zero(0) : qbar.times_x_power(sa);
  out.alpha = std::move(alpha);
  out.beta = std::move(beta);
  out.p = std::move(p);
  out.q = std::move(q);
  if (!out.verify(g))
    throw std::logic_error("certificate identity failed to expand to zero");
  return out;
}

bool JacobianCertificate::verify(const HomogeneousPoly& g) const {
  HomogeneousPoly A = g.dx(), B = g.dy();
  HomogeneousPoly lhs = A * P + B * Q;
  HomogeneousPoly target = variable == 'x'
                               ? HomogeneousPoly::monomial(m, 0)
                               : HomogeneousPoly::monomial(0, m);
  return lhs == target;
}

namespace {

// Rank of the degree-d slice of the ideal (A, B): rows are the coefficient
// vectors of x^i y^j * A and x^i y^j * B with matching total degree.
long long ideal_slice_rank(const HomogeneousPoly& A, const HomogeneousPoly& B,
                           long long d, bool parallel) {
  std::vector<std::vector<Rational>> rows;
  auto add_shifts = [&](const HomogeneousPoly& f) {
    long long shift_deg = d - f.degree();
    if (shift_deg < 0 || f.is_zero()) return;
    for (long long sj = 0; sj <= shift_deg; ++sj) {
      // multiply f by x^(shift_deg-sj) y^sj: slot j of f lands in slot j+sj
      std::vector<Rational> row(d + 1, Rational(0));
      for (long long j = 0; j <= f.degree(); ++j)
        row[j + sj] = f.coeffs()[j];
      rows.push_back(std::move(row));
    }
  };
  add_shifts(A);
  add_shifts(B);
  if (rows.empty()) return 0;
  return static_cast<long long>(parallel
                                    ? kernels::rational_rank_parallel(rows)
                                    : kernels::rational_rank_serial(rows));
}

long long mu_up_to(const HomogeneousPoly& A, const HomogeneousPoly& B,
                   long long cutoff, bool parallel) {
  long long mu = 0;
  for (long long d = 0; d < cutoff; ++d)
    mu += (d + 1) - ideal_slice_rank(A, B, d, parallel);
  return mu;
}

}  // namespace

MilnorResult milnor_number(const HomogeneousPoly& g, bool parallel) {
  if (g.is_zero() || g.degree() < 2)
    throw std::invalid_argument("Milnor number needs degree >= 2");
  if (!is_squarefree(g))
    throw std::runtime_error(
        "Milnor number is infinite: polynomial has a repeated factor");
  JacobianCertificate cx = jacobian_certificate(g, 'x');
  JacobianCertificate cy = jacobian_certificate(g, 'y');
  MilnorResult res;
  res.m_x = cx.m;
  res.m_y = cy.m;
  res.cutoff = 2 * std::max(cx.m, cy.m);
  HomogeneousPoly A = g.dx(), B = g.dy();
  res.mu = mu_up_to(A, B, res.cutoff, parallel);
  res.mu_at_recheck = mu_up_to(A, B, res.cutoff + 2, parallel);
  if (res.mu != res.mu_at_recheck)
    throw std::logic_error("Milnor number unstable under cutoff increase");
  return res;
}

HomogeneousPoly random_squarefree(std::mt19937_64& rng, long long max_degree,
                                  long long height) {
  std::uniform_int_distribution<long long> ddist(2, max_degree);
  std::uniform_int_distribution<long long> cdist(-height, height);
  while (true) {
    long long d = ddist(rng);
    std::vector<Rational> c(d + 1);
    bool nonzero = false;
    for (auto& v : c) {
      long long r = cdist(rng);
      v = Rational(r);
      nonzero = nonzero || r != 0;
    }
    if (!nonzero) continue;
    HomogeneousPoly g(d, std::move(c));
    if (is_squarefree(g)) return g;
  }
}

}  // namespace morbit
