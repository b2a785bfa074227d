#include "morbit/group_ops.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace morbit {

namespace {

long long idx_mod(const Int& k, long long m) {
  Int r = k % m;
  if (r < 0) r += m;
  return r.convert_to<long long>();
}

Int reduce_mod(const Int& v, long long m) {
  Int r = v % m;
  if (r < 0) r += m;
  return r;
}

const char* kind_name(ExprKind k) {
  switch (k) {
    case ExprKind::Unit: return "1";
    case ExprKind::IntLine: return "Z";
    case ExprKind::Cyclic: return "Z_m";
    case ExprKind::Direct: return "direct product";
    case ExprKind::WrZ: return "Wr";
    case ExprKind::WrZm: return "WrM";
    case ExprKind::WrZZ: return "Wr2";
    case ExprKind::WrZZmn: return "Wr2M";
    case ExprKind::TwistedWrZ: return "TwWr";
    case ExprKind::TwistedWrZm: return "TwWrM";
  }
  return "?";
}

[[noreturn]] void shape_fail(const GroupExpr& expr, const Element& e,
                             const char* why) {
  throw std::invalid_argument(std::string("element ") + e.to_string() +
                              " does not fit " + kind_name(expr->kind) +
                              ": " + why);
}

bool residue_ok(const Element& e, long long m) {
  return e.is_int() && e.value() >= 0 && e.value() < m;
}

}  // namespace

bool shape_ok(const GroupExpr& expr, const Element& e) {
  try {
    require_shape(expr, e);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

void require_shape(const GroupExpr& expr, const Element& e) {
  switch (expr->kind) {
    case ExprKind::Unit:
      if (!e.is_tuple() || e.size() != 0) shape_fail(expr, e, "expected ()");
      return;
    case ExprKind::IntLine:
      if (!e.is_int()) shape_fail(expr, e, "expected an integer");
      return;
    case ExprKind::Cyclic:
      if (!residue_ok(e, expr->m))
        shape_fail(expr, e, "expected a residue in [0, m)");
      return;
    case ExprKind::Direct: {
      if (!e.is_tuple() || e.size() != expr->children.size())
        shape_fail(expr, e, "factor count mismatch");
      for (size_t i = 0; i < expr->children.size(); ++i)
        require_shape(expr->children[i], e.at(i));
      return;
    }
    case ExprKind::WrZ:
    case ExprKind::WrZm: {
      if (!e.is_tuple() || e.size() != 2 || !e.at(0).is_tuple() ||
          e.at(0).size() != static_cast<size_t>(expr->m))
        shape_fail(expr, e, "expected [m-tuple, shift]");
      for (const auto& c : e.at(0).items()) require_shape(expr->children[0], c);
      if (expr->kind == ExprKind::WrZ) {
        if (!e.at(1).is_int()) shape_fail(expr, e, "shift must be an integer");
      } else if (!residue_ok(e.at(1), expr->m)) {
        shape_fail(expr, e, "shift must be a residue in [0, m)");
      }
      return;
    }
    case ExprKind::WrZZ:
    case ExprKind::WrZZmn: {
      size_t cells = static_cast<size_t>(expr->m) * static_cast<size_t>(expr->n);
      if (!e.is_tuple() || e.size() != 2 || !e.at(0).is_tuple() ||
          e.at(0).size() != cells || !e.at(1).is_tuple() || e.at(1).size() != 2)
        shape_fail(expr, e, "expected [m*n-tuple, [k, l]]");
      for (const auto& c : e.at(0).items()) require_shape(expr->children[0], c);
      if (expr->kind == ExprKind::WrZZ) {
        if (!e.at(1).at(0).is_int() || !e.at(1).at(1).is_int())
          shape_fail(expr, e, "shifts must be integers");
      } else if (!residue_ok(e.at(1).at(0), expr->m) ||
                 !residue_ok(e.at(1).at(1), expr->n)) {
        shape_fail(expr, e, "shifts must be residues");
      }
      return;
    }
    case ExprKind::TwistedWrZ:
    case ExprKind::TwistedWrZm: {
      if (!e.is_tuple() || e.size() != 3 || !e.at(0).is_tuple() ||
          e.at(0).size() != static_cast<size_t>(2 * expr->m) ||
          !e.at(1).is_tuple() || e.at(1).size() != static_cast<size_t>(expr->m))
        shape_fail(expr, e, "expected [2m-tuple, m-tuple, shift]");
      for (const auto& c : e.at(0).items()) require_shape(expr->children[0], c);
      for (const auto& c : e.at(1).items()) require_shape(expr->children[1], c);
      if (expr->kind == ExprKind::TwistedWrZ) {
        if (!e.at(2).is_int()) shape_fail(expr, e, "shift must be an integer");
      } else if (!residue_ok(e.at(2), 2 * expr->m)) {
        shape_fail(expr, e, "shift must be a residue in [0, 2m)");
      }
      return;
    }
  }
}

Element identity_element(const GroupExpr& expr) {
  switch (expr->kind) {
    case ExprKind::Unit:
      return Element(std::vector<Element>{});
    case ExprKind::IntLine:
    case ExprKind::Cyclic:
      return Element(0LL);
    case ExprKind::Direct: {
      std::vector<Element> items;
      items.reserve(expr->children.size());
      for (const auto& c : expr->children) items.push_back(identity_element(c));
      return Element(std::move(items));
    }
    case ExprKind::WrZ:
    case ExprKind::WrZm: {
      std::vector<Element> t(expr->m, identity_element(expr->children[0]));
      return Element({Element(std::move(t)), Element(0LL)});
    }
    case ExprKind::WrZZ:
    case ExprKind::WrZZmn: {
      std::vector<Element> t(expr->m * expr->n,
                             identity_element(expr->children[0]));
      return Element({Element(std::move(t)),
                      Element(std::vector<Element>{Element(0LL), Element(0LL)})});
    }
    case ExprKind::TwistedWrZ:
    case ExprKind::TwistedWrZm: {
      std::vector<Element> a(2 * expr->m, identity_element(expr->children[0]));
      std::vector<Element> h(expr->m, identity_element(expr->children[1]));
      return Element(
          {Element(std::move(a)), Element(std::move(h)), Element(0LL)});
    }
  }
  throw std::logic_error("identity_element: bad kind");
}

namespace {

// N == 0: exact semantics (free Z shifts).  N >= 1: finite-quotient
// semantics, shifts reduced mod period*N.
Element mul_impl(const GroupExpr& expr, const Element& u, const Element& v,
                 long long N) {
  switch (expr->kind) {
    case ExprKind::Unit:
      return Element(std::vector<Element>{});
    case ExprKind::IntLine:
      return Element(u.value() + v.value());
    case ExprKind::Cyclic:
      return Element(reduce_mod(u.value() + v.value(), expr->m));
    case ExprKind::Direct: {
      std::vector<Element> items;
      items.reserve(expr->children.size());
      for (size_t i = 0; i < expr->children.size(); ++i)
        items.push_back(mul_impl(expr->children[i], u.at(i), v.at(i), N));
      return Element(std::move(items));
    }
    case ExprKind::WrZ:
    case ExprKind::WrZm: {
      const GroupExpr& g = expr->children[0];
      long long m = expr->m;
      const auto& ut = u.at(0).items();
      const auto& vt = v.at(0).items();
      long long ki = idx_mod(u.at(1).value(), m);
      std::vector<Element> w;
      w.reserve(m);
      for (long long i = 0; i < m; ++i)
        w.push_back(mul_impl(g, ut[i], vt[(i + ki) % m], N));
      Int shift = u.at(1).value() + v.at(1).value();
      if (expr->kind == ExprKind::WrZm)
        shift = reduce_mod(shift, m);
      else if (N > 0)
        shift = reduce_mod(shift, m * N);
      return Element({Element(std::move(w)), Element(std::move(shift))});
    }
    case ExprKind::WrZZ:
    case ExprKind::WrZZmn: {
      const GroupExpr& g = expr->children[0];
      long long m = expr->m, n = expr->n;
      const auto& ut = u.at(0).items();
      const auto& vt = v.at(0).items();
      long long ki = idx_mod(u.at(1).at(0).value(), m);
      long long li = idx_mod(u.at(1).at(1).value(), n);
      std::vector<Element> w;
      w.reserve(m * n);
      for (long long i = 0; i < m; ++i)
        for (long long j = 0; j < n; ++j)
          w.push_back(mul_impl(g, ut[i * n + j],
                               vt[((i + ki) % m) * n + (j + li) % n], N));
      Int k = u.at(1).at(0).value() + v.at(1).at(0).value();
      Int l = u.at(1).at(1).value() + v.at(1).at(1).value();
      if (expr->kind == ExprKind::WrZZmn) {
        k = reduce_mod(k, m);
        l = reduce_mod(l, n);
      } else if (N > 0) {
        k = reduce_mod(k, m * N);
        l = reduce_mod(l, n * N);
      }
      return Element(
          {Element(std::move(w)),
           Element(std::vector<Element>{Element(std::move(k)),
                                        Element(std::move(l))})});
    }
    case ExprKind::TwistedWrZ:
    case ExprKind::TwistedWrZm: {
      const GroupExpr& g = expr->children[0];
      const GroupExpr& h = expr->children[1];
      long long m = expr->m, twom = 2 * m;
      const auto& ua = u.at(0).items();
      const auto& va = v.at(0).items();
      const auto& uh = u.at(1).items();
      const auto& vh = v.at(1).items();
      long long kp = idx_mod(u.at(2).value(), twom);
      std::vector<Element> wa;
      wa.reserve(twom);
      for (long long i = 0; i < twom; ++i)
        wa.push_back(mul_impl(g, ua[i], va[(i + kp) % twom], N));
      std::vector<Element> wh;
      wh.reserve(m);
      for (long long j = 0; j < m; ++j) {
        long long idx = j + kp;
        Element t = vh[idx % m];
        if ((idx / m) % 2 == 1) t = gamma_apply(h, expr->gamma, t);
        wh.push_back(mul_impl(h, uh[j], t, N));
      }
      Int shift = u.at(2).value() + v.at(2).value();
      if (expr->kind == ExprKind::TwistedWrZm)
        shift = reduce_mod(shift, twom);
      else if (N > 0)
        shift = reduce_mod(shift, twom * N);
      return Element({Element(std::move(wa)), Element(std::move(wh)),
                      Element(std::move(shift))});
    }
  }
  throw std::logic_error("mul: bad kind");
}

Element inverse_impl(const GroupExpr& expr, const Element& u, long long N) {
  switch (expr->kind) {
    case ExprKind::Unit:
      return Element(std::vector<Element>{});
    case ExprKind::IntLine:
      return Element(-u.value());
    case ExprKind::Cyclic:
      return Element(reduce_mod(-u.value(), expr->m));
    case ExprKind::Direct: {
      std::vector<Element> items;
      items.reserve(expr->children.size());
      for (size_t i = 0; i < expr->children.size(); ++i)
        items.push_back(inverse_impl(expr->children[i], u.at(i), N));
      return Element(std::move(items));
    }
    case ExprKind::WrZ:
    case ExprKind::WrZm: {
      const GroupExpr& g = expr->children[0];
      long long m = expr->m;
      const auto& ut = u.at(0).items();
      long long ki = idx_mod(u.at(1).value(), m);
      std::vector<Element> w;
      w.reserve(m);
      for (long long i = 0; i < m; ++i)
        w.push_back(inverse_impl(g, ut[(i + m - ki) % m], N));
      Int shift = -u.at(1).value();
      if (expr->kind == ExprKind::WrZm)
        shift = reduce_mod(shift, m);
      else if (N > 0)
        shift = reduce_mod(shift, m * N);
      return Element({Element(std::move(w)), Element(std::move(shift))});
    }
    case ExprKind::WrZZ:
    case ExprKind::WrZZmn: {
      const GroupExpr& g = expr->children[0];
      long long m = expr->m, n = expr->n;
      const auto& ut = u.at(0).items();
      long long ki = idx_mod(u.at(1).at(0).value(), m);
      long long li = idx_mod(u.at(1).at(1).value(), n);
      std::vector<Element> w;
      w.reserve(m * n);
      for (long long i = 0; i < m; ++i)
        for (long long j = 0; j < n; ++j)
          w.push_back(inverse_impl(
              g, ut[((i + m - ki) % m) * n + (j + n - li) % n], N));
      Int k = -u.at(1).at(0).value();
      Int l = -u.at(1).at(1).value();
      if (expr->kind == ExprKind::WrZZmn) {
        k = reduce_mod(k, m);
        l = reduce_mod(l, n);
      } else if (N > 0) {
        k = reduce_mod(k, m * N);
        l = reduce_mod(l, n * N);
      }
      return Element(
          {Element(std::move(w)),
           Element(std::vector<Element>{Element(std::move(k)),
                                        Element(std::move(l))})});
    }
    case ExprKind::TwistedWrZ:
    case ExprKind::TwistedWrZm: {
      const GroupExpr& g = expr->children[0];
      const GroupExpr& h = expr->children[1];
      long long m = expr->m, twom = 2 * m;
      const auto& ua = u.at(0).items();
      const auto& uh = u.at(1).items();
      long long kp = idx_mod(u.at(2).value(), twom);
      std::vector<Element> wa;
      wa.reserve(twom);
      for (long long i = 0; i < twom; ++i)
        wa.push_back(inverse_impl(g, ua[(i + twom - kp) % twom], N));
      std::vector<Element> wh;
      wh.reserve(m);
      long long km = kp % m;
      for (long long i = 0; i < m; ++i) {
        long long j = (i + m - km) % m;
        Element t = inverse_impl(h, uh[j], N);
        if (((j + kp) / m) % 2 == 1) t = gamma_apply(h, expr->gamma, t);
        wh.push_back(std::move(t));
      }
      Int shift = -u.at(2).value();
      if (expr->kind == ExprKind::TwistedWrZm)
        shift = reduce_mod(shift, twom);
      else if (N > 0)
        shift = reduce_mod(shift, twom * N);
      return Element({Element(std::move(wa)), Element(std::move(wh)),
                      Element(std::move(shift))});
    }
  }
  throw std::logic_error("inverse: bad kind");
}

bool has_nonzero_z(const GroupExpr& expr, const Element& e) {
  switch (expr->kind) {
    case ExprKind::Unit:
    case ExprKind::Cyclic:
      return false;
    case ExprKind::IntLine:
      return e.value() != 0;
    case ExprKind::Direct: {
      for (size_t i = 0; i < expr->children.size(); ++i)
        if (has_nonzero_z(expr->children[i], e.at(i))) return true;
      return false;
    }
    case ExprKind::WrZ:
    case ExprKind::WrZm: {
      if (expr->kind == ExprKind::WrZ && e.at(1).value() != 0) return true;
      for (const auto& c : e.at(0).items())
        if (has_nonzero_z(expr->children[0], c)) return true;
      return false;
    }
    case ExprKind::WrZZ:
    case ExprKind::WrZZmn: {
      if (expr->kind == ExprKind::WrZZ &&
          (e.at(1).at(0).value() != 0 || e.at(1).at(1).value() != 0))
        return true;
      for (const auto& c : e.at(0).items())
        if (has_nonzero_z(expr->children[0], c)) return true;
      return false;
    }
    case ExprKind::TwistedWrZ:
    case ExprKind::TwistedWrZm: {
      if (expr->kind == ExprKind::TwistedWrZ && e.at(2).value() != 0)
        return true;
      for (const auto& c : e.at(0).items())
        if (has_nonzero_z(expr->children[0], c)) return true;
      for (const auto& c : e.at(1).items())
        if (has_nonzero_z(expr->children[1], c)) return true;
      return false;
    }
  }
  return false;
}

}  // namespace

Element mul(const GroupExpr& expr, const Element& u, const Element& v) {
  require_shape(expr, u);
  require_shape(expr, v);
  return mul_impl(expr, u, v, 0);
}

Element inverse(const GroupExpr& expr, const Element& u) {
  require_shape(expr, u);
  return inverse_impl(expr, u, 0);
}

Element power(const GroupExpr& expr, const Element& u, const Int& n) {
  if (n < 0) return inverse(expr, power(expr, u, -n));
  Element acc = identity_element(expr);
  Element base = u;
  Int e = n;
  while (e > 0) {
    if ((e & 1) != 0) acc = mul(expr, acc, base);
    e >>= 1;
    if (e > 0) base = mul(expr, base, base);
  }
  return acc;
}

Element conjugate(const GroupExpr& expr, const Element& g, const Element& u) {
  return mul(expr, mul(expr, g, u), inverse(expr, g));
}

OrderResult element_order(const GroupExpr& expr, const Element& u,
                          long long bound) {
  if (has_nonzero_z(expr, u))
    return {OrderResult::Status::Infinite, Int(0)};
  Element id = identity_element(expr);
  Element acc = u;
  long long n = 1;
  while (acc != id) {
    if (n >= bound) return {OrderResult::Status::ExceedsBound, Int(0)};
    acc = mul(expr, acc, u);
    ++n;
  }
  return {OrderResult::Status::Finite, Int(n)};
}

namespace {

struct TwistedParts {
  std::vector<Element> a;
  std::vector<Element> h;
};

TwistedParts beta_step(const GroupExpr& expr, TwistedParts p) {
  long long m = expr->m, twom = 2 * m;
  TwistedParts q;
  q.a.reserve(twom);
  for (long long i = 0; i + 1 < twom; ++i) q.a.push_back(std::move(p.a[i + 1]));
  q.a.push_back(std::move(p.a[0]));
  q.h.reserve(m);
  for (long long j = 0; j + 1 < m; ++j) q.h.push_back(std::move(p.h[j + 1]));
  q.h.push_back(gamma_apply(expr->children[1], expr->gamma, p.h[0]));
  return q;
}

TwistedParts beta_inv_step(const GroupExpr& expr, TwistedParts p) {
  long long m = expr->m, twom = 2 * m;
  TwistedParts q;
  q.a.reserve(twom);
  q.a.push_back(std::move(p.a[twom - 1]));
  for (long long i = 0; i + 1 < twom; ++i) q.a.push_back(std::move(p.a[i]));
  q.h.reserve(m);
  q.h.push_back(gamma_apply(expr->children[1], expr->gamma, p.h[m - 1]));
  for (long long j = 0; j + 1 < m; ++j) q.h.push_back(std::move(p.h[j]));
  return q;
}

Element twisted_oracle_impl(const GroupExpr& expr, const Element& u,
                            const Element& v, long long N) {
  if (expr->kind != ExprKind::TwistedWrZ && expr->kind != ExprKind::TwistedWrZm)
    throw std::invalid_argument("twisted_mul_oracle: not a twisted product");
  const GroupExpr& g = expr->children[0];
  const GroupExpr& h = expr->children[1];
  long long m = expr->m, twom = 2 * m;
  Int k = u.at(2).value();
  if (k > 1000000 || k < -1000000)
    throw std::runtime_error("twisted_mul_oracle: shift too large to step");
  TwistedParts p{v.at(0).items(), v.at(1).items()};
  long long steps = k.convert_to<long long>();
  for (; steps > 0; --steps) p = beta_step(expr, std::move(p));
  for (; steps < 0; ++steps) p = beta_inv_step(expr, std::move(p));
  std::vector<Element> wa;
  wa.reserve(twom);
  for (long long i = 0; i < twom; ++i)
    wa.push_back(mul_impl(g, u.at(0).at(i), p.a[i], N));
  std::vector<Element> wh;
  wh.reserve(m);
  for (long long j = 0; j < m; ++j)
    wh.push_back(mul_impl(h, u.at(1).at(j), p.h[j], N));
  Int shift = k + v.at(2).value();
  if (expr->kind == ExprKind::TwistedWrZm)
    shift = reduce_mod(shift, twom);
  else if (N > 0)
    shift = reduce_mod(shift, twom * N);
  return Element(
      {Element(std::move(wa)), Element(std::move(wh)), Element(std::move(shift))});
}

}  // namespace

Element twisted_mul_oracle(const GroupExpr& expr, const Element& u,
                           const Element& v) {
  return twisted_oracle_impl(expr, u, v, 0);
}

Element quotient_twisted_mul_oracle(const GroupExpr& expr, long long N,
                                    const Element& u, const Element& v) {
  return twisted_oracle_impl(expr, u, v, N);
}

Element gamma_apply(const GroupExpr& h_expr, const Involution& gamma,
                    const Element& x) {
  switch (gamma.kind) {
    case Involution::Kind::Identity:
      return x;
    case Involution::Kind::Inversion:
      return inverse(h_expr, x);
    case Involution::Kind::FactorPerm: {
      if (h_expr->kind != ExprKind::Direct) {
        if (gamma.perm.size() != 1)
          throw std::invalid_argument(
              "factor permutation needs a direct-product domain");
        return gamma.inner.empty()
                   ? x
                   : gamma_apply(h_expr, gamma.inner[0], x);
      }
      size_t n = h_expr->children.size();
      if (gamma.perm.size() != n)
        throw std::invalid_argument("factor permutation arity mismatch");
      std::vector<Element> items;
      items.reserve(n);
      for (size_t i = 0; i < n; ++i) {
        int src = gamma.perm[i];
        if (!equal(h_expr->children[i], h_expr->children[src]))
          throw std::invalid_argument(
              "factor permutation moves structurally different factors");
        Element y = x.at(src);
        if (!gamma.inner.empty())
          y = gamma_apply(h_expr->children[i], gamma.inner[i], y);
        items.push_back(std::move(y));
      }
      return Element(std::move(items));
    }
    case Involution::Kind::Table: {
      auto it = std::lower_bound(
          gamma.table.begin(), gamma.table.end(), x,
          [](const std::pair<Element, Element>& row, const Element& key) {
            return Element::compare(row.first, key) < 0;
          });
      if (it == gamma.table.end() || it->first != x)
        throw std::invalid_argument("table involution: element not in domain");
      return it->second;
    }
  }
  throw std::logic_error("gamma_apply: bad kind");
}

namespace {

bool expr_is_finite(const GroupExpr& e) {
  switch (e->kind) {
    case ExprKind::Unit:
    case ExprKind::Cyclic:
      return true;
    case ExprKind::IntLine:
    case ExprKind::WrZ:
    case ExprKind::WrZZ:
    case ExprKind::TwistedWrZ:
      return false;
    default:
      break;
  }
  for (const auto& c : e->children)
    if (!expr_is_finite(c)) return false;
  return true;
}

}  // namespace

InvolutionCheck check_involution(const GroupExpr& h_expr,
                                 const Involution& gamma, unsigned seed,
                                 int sample_count) {
  std::vector<Element> probe;
  if (expr_is_finite(h_expr) && quotient_order(h_expr, 1) <= 512) {
    probe = quotient_elements(h_expr, 1, Int(512));
  } else {
    std::mt19937_64 rng(seed);
    for (int i = 0; i < sample_count; ++i)
      probe.push_back(sample_element(h_expr, rng));
  }
  InvolutionCheck out;
  for (const auto& x : probe) {
    if (gamma_apply(h_expr, gamma, gamma_apply(h_expr, gamma, x)) != x) {
      out.involutive = false;
      out.witness = x;
      return out;
    }
  }
  for (size_t i = 0; i < probe.size() && out.homomorphic; ++i) {
    size_t stride = probe.size() > 64 ? probe.size() / 64 + 1 : 1;
    for (size_t j = 0; j < probe.size(); j += stride) {
      Element lhs =
          gamma_apply(h_expr, gamma, mul(h_expr, probe[i], probe[j]));
      Element rhs = mul(h_expr, gamma_apply(h_expr, gamma, probe[i]),
                        gamma_apply(h_expr, gamma, probe[j]));
      if (lhs != rhs) {
        out.homomorphic = false;
        out.witness = probe[i];
        break;
      }
    }
  }
  return out;
}

Element sample_element(const GroupExpr& expr, std::mt19937_64& rng,
                       long long int_range) {
  auto rand_int = [&](long long lo, long long hi) {
    std::uniform_int_distribution<long long> d(lo, hi);
    return d(rng);
  };
  switch (expr->kind) {
    case ExprKind::Unit:
      return Element(std::vector<Element>{});
    case ExprKind::IntLine:
      return Element(rand_int(-int_range, int_range));
    case ExprKind::Cyclic:
      return Element(rand_int(0, expr->m - 1));
    case ExprKind::Direct: {
      std::vector<Element> items;
      for (const auto& c : expr->children)
        items.push_back(sample_element(c, rng, int_range));
      return Element(std::move(items));
    }
    case ExprKind::WrZ:
    case ExprKind::WrZm: {
      std::vector<Element> t;
      for (long long i = 0; i < expr->m; ++i)
        t.push_back(sample_element(expr->children[0], rng, int_range));
      long long s = expr->kind == ExprKind::WrZ ? rand_int(-int_range, int_range)
                                                : rand_int(0, expr->m - 1);
      return Element({Element(std::move(t)), Element(s)});
    }
    case ExprKind::WrZZ:
    case ExprKind::WrZZmn: {
      std::vector<Element> t;
      for (long long i = 0; i < expr->m * expr->n; ++i)
        t.push_back(sample_element(expr->children[0], rng, int_range));
      long long k, l;
      if (expr->kind == ExprKind::WrZZ) {
        k = rand_int(-int_range, int_range);
        l = rand_int(-int_range, int_range);
      } else {
        k = rand_int(0, expr->m - 1);
        l = rand_int(0, expr->n - 1);
      }
      return Element({Element(std::move(t)),
                      Element(std::vector<Element>{Element(k), Element(l)})});
    }
    case ExprKind::TwistedWrZ:
    case ExprKind::TwistedWrZm: {
      std::vector<Element> a, h;
      for (long long i = 0; i < 2 * expr->m; ++i)
        a.push_back(sample_element(expr->children[0], rng, int_range));
      for (long long j = 0; j < expr->m; ++j)
        h.push_back(sample_element(expr->children[1], rng, int_range));
      long long s = expr->kind == ExprKind::TwistedWrZ
                        ? rand_int(-int_range, int_range)
                        : rand_int(0, 2 * expr->m - 1);
      return Element({Element(std::move(a)), Element(std::move(h)), Element(s)});
    }
  }
  throw std::logic_error("sample_element: bad kind");
}

Int canonical_eta(const GroupExpr& expr, const Element& e) {
  switch (expr->kind) {
    case ExprKind::IntLine:
      return e.value();
    case ExprKind::WrZ:
      return e.at(1).value();
    case ExprKind::TwistedWrZ:
      return e.at(2).value();
    default:
      throw std::invalid_argument(
          "canonical_eta: construction has no canonical epimorphism onto Z");
  }
}

Element shift_generator(const GroupExpr& expr) {
  switch (expr->kind) {
    case ExprKind::IntLine:
      return Element(1LL);
    case ExprKind::WrZ:
    case ExprKind::WrZm: {
      Element id = identity_element(expr);
      return Element({id.at(0), Element(1LL)});
    }
    case ExprKind::TwistedWrZ:
    case ExprKind::TwistedWrZm: {
      Element id = identity_element(expr);
      return Element({id.at(0), id.at(1), Element(1LL)});
    }
    default:
      throw std::invalid_argument("shift_generator: no acting Z coordinate");
  }
}

Element with_zero_shift(const GroupExpr& expr, const Element& e) {
  switch (expr->kind) {
    case ExprKind::IntLine:
      return Element(0LL);
    case ExprKind::WrZ:
    case ExprKind::WrZm:
      return Element({e.at(0), Element(0LL)});
    case ExprKind::TwistedWrZ:
    case ExprKind::TwistedWrZm:
      return Element({e.at(0), e.at(1), Element(0LL)});
    default:
      throw std::invalid_argument("with_zero_shift: no acting Z coordinate");
  }
}

bool quotientable(const GroupExpr& expr) {
  switch (expr->kind) {
    case ExprKind::Unit:
    case ExprKind::Cyclic:
      return true;
    case ExprKind::IntLine:
      return false;
    default:
      break;
  }
  for (const auto& c : expr->children)
    if (!quotientable(c)) return false;
  return true;
}

Int quotient_order(const GroupExpr& expr, long long N) {
  if (N < 1) throw std::invalid_argument("quotient multiplier must be >= 1");
  switch (expr->kind) {
    case ExprKind::Unit:
      return 1;
    case ExprKind::IntLine:
      throw std::invalid_argument(
          "finite quotient: free Z leaf is not quotientable");
    case ExprKind::Cyclic:
      return expr->m;
    case ExprKind::Direct: {
      Int p = 1;
      for (const auto& c : expr->children) p *= quotient_order(c, N);
      return p;
    }
    case ExprKind::WrZ:
    case ExprKind::WrZm: {
      Int b = quotient_order(expr->children[0], N);
      Int p = 1;
      for (long long i = 0; i < expr->m; ++i) p *= b;
      return p * (expr->kind == ExprKind::WrZ ? expr->m * N : expr->m);
    }
    case ExprKind::WrZZ:
    case ExprKind::WrZZmn: {
      Int b = quotient_order(expr->children[0], N);
      Int p = 1;
      for (long long i = 0; i < expr->m * expr->n; ++i) p *= b;
      if (expr->kind == ExprKind::WrZZ)
        return p * (expr->m * N) * (expr->n * N);
      return p * expr->m * expr->n;
    }
    case ExprKind::TwistedWrZ:
    case ExprKind::TwistedWrZm: {
      Int bg = quotient_order(expr->children[0], N);
      Int bh = quotient_order(expr->children[1], N);
      Int p = 1;
      for (long long i = 0; i < 2 * expr->m; ++i) p *= bg;
      for (long long j = 0; j < expr->m; ++j) p *= bh;
      return p * (expr->kind == ExprKind::TwistedWrZ ? 2 * expr->m * N
                                                     : 2 * expr->m);
    }
  }
  throw std::logic_error("quotient_order: bad kind");
}

Element quotient_identity(const GroupExpr& expr, long long) {
  return identity_element(expr);
}

Element quotient_mul(const GroupExpr& expr, long long N, const Element& u,
                     const Element& v) {
  return mul_impl(expr, u, v, N);
}

Element quotient_inverse(const GroupExpr& expr, long long N, const Element& u) {
  return inverse_impl(expr, u, N);
}

namespace {

void cartesian(const std::vector<std::vector<Element>>& slots,
               std::vector<Element>& current, size_t at,
               const std::function<void(const std::vector<Element>&)>& emit) {
  if (at == slots.size()) {
    emit(current);
    return;
  }
  for (const auto& e : slots[at]) {
    current.push_back(e);
    cartesian(slots, current, at + 1, emit);
    current.pop_back();
  }
}

std::vector<Element> range_elements(long long mod) {
  std::vector<Element> out;
  out.reserve(mod);
  for (long long v = 0; v < mod; ++v) out.push_back(Element(v));
  return out;
}

}  // namespace

std::vector<Element> quotient_elements(const GroupExpr& expr, long long N,
                                       const Int& cap) {
  Int total = quotient_order(expr, N);
  if (total > cap)
    throw std::runtime_error("finite quotient of order " + total.str() +
                             " exceeds cap " + cap.str());
  switch (expr->kind) {
    case ExprKind::Unit:
      return {Element(std::vector<Element>{})};
    case ExprKind::Cyclic:
      return range_elements(expr->m);
    case ExprKind::IntLine:
      throw std::invalid_argument(
          "finite quotient: free Z leaf is not quotientable");
    case ExprKind::Direct: {
      std::vector<std::vector<Element>> slots;
      for (const auto& c : expr->children)
        slots.push_back(quotient_elements(c, N, cap));
      std::vector<Element> out;
      std::vector<Element> cur;
      cartesian(slots, cur, 0, [&](const std::vector<Element>& t) {
        out.push_back(Element(t));
      });
      return out;
    }
    case ExprKind::WrZ:
    case ExprKind::WrZm: {
      auto base = quotient_elements(expr->children[0], N, cap);
      long long mod = expr->kind == ExprKind::WrZ ? expr->m * N : expr->m;
      std::vector<std::vector<Element>> slots(expr->m, base);
      std::vector<Element> out;
      std::vector<Element> cur;
      cartesian(slots, cur, 0, [&](const std::vector<Element>& t) {
        for (long long s = 0; s < mod; ++s)
          out.push_back(Element({Element(t), Element(s)}));
      });
      return out;
    }
    case ExprKind::WrZZ:
    case ExprKind::WrZZmn: {
      auto base = quotient_elements(expr->children[0], N, cap);
      long long mk = expr->kind == ExprKind::WrZZ ? expr->m * N : expr->m;
      long long ml = expr->kind == ExprKind::WrZZ ? expr->n * N : expr->n;
      std::vector<std::vector<Element>> slots(expr->m * expr->n, base);
      std::vector<Element> out;
      std::vector<Element> cur;
      cartesian(slots, cur, 0, [&](const std::vector<Element>& t) {
        for (long long k = 0; k < mk; ++k)
          for (long long l = 0; l < ml; ++l)
            out.push_back(Element(
                {Element(t), Element(std::vector<Element>{Element(k),
                                                          Element(l)})}));
      });
      return out;
    }
    case ExprKind::TwistedWrZ:
    case ExprKind::TwistedWrZm: {
      auto gbase = quotient_elements(expr->children[0], N, cap);
      auto hbase = quotient_elements(expr->children[1], N, cap);
      long long mod =
          expr->kind == ExprKind::TwistedWrZ ? 2 * expr->m * N : 2 * expr->m;
      std::vector<std::vector<Element>> gslots(2 * expr->m, gbase);
      std::vector<Element> out;
      std::vector<Element> gcur;
      cartesian(gslots, gcur, 0, [&](const std::vector<Element>& ga) {
        std::vector<std::vector<Element>> hslots(expr->m, hbase);
        std::vector<Element> hcur;
        cartesian(hslots, hcur, 0, [&](const std::vector<Element>& hh) {
          for (long long s = 0; s < mod; ++s)
            out.push_back(
                Element({Element(ga), Element(hh), Element(s)}));
        });
      });
      return out;
    }
  }
  throw std::logic_error("quotient_elements: bad kind");
}

Element quotient_sample(const GroupExpr& expr, long long N,
                        std::mt19937_64& rng) {
  auto rand_mod = [&](long long mod) {
    std::uniform_int_distribution<long long> d(0, mod - 1);
    return d(rng);
  };
  switch (expr->kind) {
    case ExprKind::Unit:
      return Element(std::vector<Element>{});
    case ExprKind::Cyclic:
      return Element(rand_mod(expr->m));
    case ExprKind::IntLine:
      throw std::invalid_argument(
          "finite quotient: free Z leaf is not quotientable");
    case ExprKind::Direct: {
      std::vector<Element> items;
      for (const auto& c : expr->children)
        items.push_back(quotient_sample(c, N, rng));
      return Element(std::move(items));
    }
    case ExprKind::WrZ:
    case ExprKind::WrZm: {
      std::vector<Element> t;
      for (long long i = 0; i < expr->m; ++i)
        t.push_back(quotient_sample(expr->children[0], N, rng));
      long long mod = expr->kind == ExprKind::WrZ ? expr->m * N : expr->m;
      return Element({Element(std::move(t)), Element(rand_mod(mod))});
    }
    case ExprKind::WrZZ:
    case ExprKind::WrZZmn: {
      std::vector<Element> t;
      for (long long i = 0; i < expr->m * expr->n; ++i)
        t.push_back(quotient_sample(expr->children[0], N, rng));
      long long mk = expr->kind == ExprKind::WrZZ ? expr->m * N : expr->m;
      long long ml = expr->kind == ExprKind::WrZZ ? expr->n * N : expr->n;
      return Element({Element(std::move(t)),
                      Element(std::vector<Element>{Element(rand_mod(mk)),
                                                   Element(rand_mod(ml))})});
    }
    case ExprKind::TwistedWrZ:
    case ExprKind::TwistedWrZm: {
      std::vector<Element> a, h;
      for (long long i = 0; i < 2 * expr->m; ++i)
        a.push_back(quotient_sample(expr->children[0], N, rng));
      for (long long j = 0; j < expr->m; ++j)
        h.push_back(quotient_sample(expr->children[1], N, rng));
      long long mod =
          expr->kind == ExprKind::TwistedWrZ ? 2 * expr->m * N : 2 * expr->m;
      return Element(
          {Element(std::move(a)), Element(std::move(h)), Element(rand_mod(mod))});
    }
  }
  throw std::logic_error("quotient_sample: bad kind");
}

GroupExpr substitute_int_line(const GroupExpr& expr, long long N) {
  switch (expr->kind) {
    case ExprKind::Unit:
    case ExprKind::Cyclic:
      return expr;
    case ExprKind::IntLine:
      return cyclic(N);
    case ExprKind::Direct: {
      std::vector<GroupExpr> ch;
      for (const auto& c : expr->children)
        ch.push_back(substitute_int_line(c, N));
      return direct(std::move(ch));
    }
    case ExprKind::WrZ:
      return wr_z(substitute_int_line(expr->children[0], N), expr->m);
    case ExprKind::WrZm:
      return wr_zm(substitute_int_line(expr->children[0], N), expr->m);
    case ExprKind::WrZZ:
      return wr_zz(substitute_int_line(expr->children[0], N), expr->m, expr->n);
    case ExprKind::WrZZmn:
      return wr_zzmn(substitute_int_line(expr->children[0], N), expr->m,
                     expr->n);
    case ExprKind::TwistedWrZ:
      return twisted_wr_z(substitute_int_line(expr->children[0], N),
                          substitute_int_line(expr->children[1], N),
                          expr->gamma, expr->m);
    case ExprKind::TwistedWrZm:
      return twisted_wr_zm(substitute_int_line(expr->children[0], N),
                           substitute_int_line(expr->children[1], N),
                           expr->gamma, expr->m);
  }
  throw std::logic_error("substitute_int_line: bad kind");
}

}  // namespace morbit
