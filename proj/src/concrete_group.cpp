#include "morbit/concrete_group.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace morbit {

ConcreteGroup ConcreteGroup::from_quotient(const GroupExpr& expr, long long N,
                                           const Int& cap, bool parallel) {
  ConcreteGroup g;
  g.elems_ = quotient_elements(expr, N, cap);
  auto res =
      parallel
          ? kernels::build_cayley_table_parallel(
                g.elems_,
                [&](const Element& a, const Element& b) {
                  return quotient_mul(expr, N, a, b);
                })
          : kernels::build_cayley_table_serial(
                g.elems_, [&](const Element& a, const Element& b) {
                  return quotient_mul(expr, N, a, b);
                });
  if (!res.closed)
    throw std::runtime_error("finite quotient is not closed under product");
  g.table_ = std::move(res.table);
  g.verify(parallel);
  return g;
}

ConcreteGroup ConcreteGroup::from_elements(std::vector<Element> elems,
                                           const kernels::ElementMul& mul,
                                           bool parallel) {
  ConcreteGroup g;
  g.elems_ = std::move(elems);
  auto res = parallel ? kernels::build_cayley_table_parallel(g.elems_, mul)
                      : kernels::build_cayley_table_serial(g.elems_, mul);
  if (!res.closed)
    throw std::runtime_error("element set is not closed under product");
  g.table_ = std::move(res.table);
  g.verify(parallel);
  return g;
}

ConcreteGroup ConcreteGroup::from_table(std::vector<Element> elems,
                                        std::vector<uint32_t> table,
                                        bool parallel) {
  ConcreteGroup g;
  g.elems_ = std::move(elems);
  if (table.size() != g.elems_.size() * g.elems_.size())
    throw std::invalid_argument("table size does not match element count");
  g.table_ = std::move(table);
  g.verify(parallel);
  return g;
}

void ConcreteGroup::verify(bool parallel) {
  size_t n = elems_.size();
  if (n == 0) throw std::invalid_argument("empty element set");
  sorted_.reserve(n);
  for (uint32_t i = 0; i < n; ++i) sorted_.emplace_back(elems_[i], i);
  std::sort(sorted_.begin(), sorted_.end(), [](const auto& a, const auto& b) {
    return Element::compare(a.first, b.first) < 0;
  });

  bool latin = parallel ? kernels::is_latin_parallel(table_, n)
                        : kernels::is_latin_serial(table_, n);
  if (!latin)
    throw std::runtime_error("product table violates cancellation");
  auto assoc = parallel ? kernels::check_associativity_parallel(table_, n)
                        : kernels::check_associativity_serial(table_, n);
  if (!assoc.ok)
    throw std::runtime_error(
        "product table is not associative at (" + std::to_string(assoc.i) +
        ", " + std::to_string(assoc.j) + ", " + std::to_string(assoc.k) + ")");

  bool found_id = false;
  for (size_t e = 0; e < n; ++e) {
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i)
      ok = table_[e * n + i] == i && table_[i * n + e] == i;
    if (ok) {
      id_ = e;
      found_id = true;
      break;
    }
  }
  if (!found_id) throw std::runtime_error("product table has no identity");

  inv_.assign(n, 0);
  for (size_t i = 0; i < n; ++i) {
    bool found = false;
    for (size_t j = 0; j < n; ++j) {
      if (table_[i * n + j] == id_ && table_[j * n + i] == id_) {
        inv_[i] = static_cast<uint32_t>(j);
        found = true;
        break;
      }
    }
    if (!found)
      throw std::runtime_error("element " + std::to_string(i) +
                               " has no inverse");
  }
}

size_t ConcreteGroup::index_of(const Element& e) const {
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), e,
                             [](const auto& row, const Element& key) {
                               return Element::compare(row.first, key) < 0;
                             });
  if (it == sorted_.end() || it->first != e)
    throw std::invalid_argument("element " + e.to_string() +
                                " is not in this group");
  return it->second;
}

bool ConcreteGroup::contains(const Element& e) const {
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), e,
                             [](const auto& row, const Element& key) {
                               return Element::compare(row.first, key) < 0;
                             });
  return it != sorted_.end() && it->first == e;
}

long long ConcreteGroup::order_of(size_t i) const {
  size_t acc = i;
  long long ord = 1;
  while (acc != id_) {
    acc = mul(acc, i);
    ++ord;
  }
  return ord;
}

bool ConcreteGroup::is_abelian() const {
  size_t n = size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (table_[i * n + j] != table_[j * n + i]) return false;
  return true;
}

std::vector<size_t> ConcreteGroup::subgroup_closure(
    const std::vector<size_t>& gens) const {
  std::vector<char> in(size(), 0);
  std::vector<size_t> frontier{id_};
  in[id_] = 1;
  for (size_t g : gens) {
    if (!in[g]) {
      in[g] = 1;
      frontier.push_back(g);
    }
  }
  // Generators include inverses implicitly since the group is finite:
  // closing under products alone reaches g^-1 = g^(ord-1).
  for (size_t at = 0; at < frontier.size(); ++at) {
    for (size_t g : gens) {
      size_t p = mul(frontier[at], g);
      if (!in[p]) {
        in[p] = 1;
        frontier.push_back(p);
      }
      size_t q = mul(g, frontier[at]);
      if (!in[q]) {
        in[q] = 1;
        frontier.push_back(q);
      }
    }
  }
  std::vector<size_t> out;
  for (size_t i = 0; i < size(); ++i)
    if (in[i]) out.push_back(i);
  return out;
}

bool ConcreteGroup::is_subgroup(const std::vector<size_t>& sub) const {
  std::vector<char> in(size(), 0);
  for (size_t s : sub) in[s] = 1;
  if (!in[id_]) return false;
  for (size_t a : sub)
    for (size_t b : sub)
      if (!in[mul(a, b)]) return false;
  for (size_t a : sub)
    if (!in[inv(a)]) return false;
  return true;
}

bool ConcreteGroup::is_normal(const std::vector<size_t>& sub) const {
  std::vector<char> in(size(), 0);
  for (size_t s : sub) in[s] = 1;
  for (size_t g = 0; g < size(); ++g)
    for (size_t s : sub)
      if (!in[conj(g, s)]) return false;
  return true;
}

std::vector<size_t> ConcreteGroup::intersection(
    const std::vector<size_t>& a, const std::vector<size_t>& b) const {
  std::vector<char> in(size(), 0);
  for (size_t x : b) in[x] = 1;
  std::vector<size_t> out;
  for (size_t x : a)
    if (in[x]) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<size_t> ConcreteGroup::product_set(
    const std::vector<size_t>& a, const std::vector<size_t>& b) const {
  std::vector<char> in(size(), 0);
  for (size_t x : a)
    for (size_t y : b) in[mul(x, y)] = 1;
  std::vector<size_t> out;
  for (size_t i = 0; i < size(); ++i)
    if (in[i]) out.push_back(i);
  return out;
}

std::vector<size_t> ConcreteGroup::commutator_subgroup() const {
  std::vector<size_t> comms;
  std::vector<char> seen(size(), 0);
  for (size_t a = 0; a < size(); ++a)
    for (size_t b = 0; b < size(); ++b) {
      size_t c = mul(mul(a, b), mul(inv(a), inv(b)));
      if (!seen[c]) {
        seen[c] = 1;
        comms.push_back(c);
      }
    }
  return subgroup_closure(comms);
}

std::vector<size_t> ConcreteGroup::full_subgroup() const {
  std::vector<size_t> out(size());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

std::vector<size_t> ConcreteGroup::trivial_subgroup() const { return {id_}; }

GroupQuotient ConcreteGroup::quotient_by(
    const std::vector<size_t>& normal_sub) const {
  if (!is_subgroup(normal_sub))
    throw std::invalid_argument("quotient_by: not a subgroup");
  if (!is_normal(normal_sub))
    throw std::invalid_argument("quotient_by: subgroup is not normal");
  size_t n = size();
  constexpr size_t kUnassigned = static_cast<size_t>(-1);
  std::vector<size_t> coset_of(n, kUnassigned);
  std::vector<size_t> reps;
  for (size_t g = 0; g < n; ++g) {
    if (coset_of[g] != kUnassigned) continue;
    size_t c = reps.size();
    // Smallest-index member is the representative: indices scan upward,
    // so g itself is minimal in its coset.
    reps.push_back(g);
    for (size_t s : normal_sub) coset_of[mul(g, s)] = c;
    if (coset_of[g] != c)
      throw std::logic_error("quotient_by: coset enumeration failed");
  }
  ConcreteGroup q;
  q.elems_.reserve(reps.size());
  for (size_t r : reps) q.elems_.push_back(elems_[r]);
  size_t qn = reps.size();
  q.table_.assign(qn * qn, 0);
  for (size_t i = 0; i < qn; ++i)
    for (size_t j = 0; j < qn; ++j)
      q.table_[i * qn + j] =
          static_cast<uint32_t>(coset_of[mul(reps[i], reps[j])]);
  q.verify(false);
  return {std::move(q), std::move(coset_of)};
}

std::vector<long long> ConcreteGroup::abelian_invariants() const {
  auto ab = quotient_by(commutator_subgroup()).group;
  // Peel off a cyclic factor of maximal order; for finite abelian groups
  // the subgroup it generates is a direct summand, so recursing on the
  // quotient yields the invariant factor chain.
  std::vector<long long> factors;
  ConcreteGroup cur = std::move(ab);
  while (cur.size() > 1) {
    size_t best = cur.identity();
    long long best_ord = 1;
    for (size_t i = 0; i < cur.size(); ++i) {
      long long o = cur.order_of(i);
      if (o > best_ord) {
        best_ord = o;
        best = i;
      }
    }
    factors.push_back(best_ord);
    auto sub = cur.subgroup_closure({best});
    cur = cur.quotient_by(sub).group;
  }
  std::reverse(factors.begin(), factors.end());
  return factors;
}

bool operator==(const FingerprintRow& a, const FingerprintRow& b) {
  return a.N == b.N && a.order == b.order && a.computed == b.computed &&
         a.abelian_invariants == b.abelian_invariants;
}

std::vector<FingerprintRow> invariant_fingerprint(const GroupExpr& expr,
                                                  int depth, const Int& cap) {
  std::vector<FingerprintRow> rows;
  for (long long N = 1; N <= depth; ++N) {
    GroupExpr finite_leaves = substitute_int_line(expr, N);
    FingerprintRow row;
    row.N = N;
    row.order = quotient_order(finite_leaves, N);
    if (row.order <= cap) {
      auto g = ConcreteGroup::from_quotient(finite_leaves, N, cap);
      row.computed = true;
      row.abelian_invariants = g.abelian_invariants();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace morbit
