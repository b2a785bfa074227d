#pragma once

// Finite groups materialized as Cayley tables.  These are the brute-force
// oracles the symbolic layer is tested against: a table is built from an
// element list and a multiplication closure, then closure, cancellation,
// associativity, identity and inverses are all verified directly before
// the object is handed out.

#include <cstdint>
#include <vector>

#include "morbit/element.hpp"
#include "morbit/group_expr.hpp"
#include "morbit/group_ops.hpp"
#include "morbit/kernels.hpp"

namespace morbit {

class ConcreteGroup;

// Result of factoring by a normal subgroup: the coset group plus the
// projection sending each element index to its coset index.
struct GroupQuotient;

class ConcreteGroup {
 public:
  // Builds the table for the finite quotient of expr at multiplier N
  // (all free Z shifts reduced mod period*N).  Throws if the order
  // exceeds cap or any group axiom fails.
  static ConcreteGroup from_quotient(const GroupExpr& expr, long long N,
                                     const Int& cap = Int(2000),
                                     bool parallel = true);

  // Builds and verifies a table from explicit elements and a product rule.
  static ConcreteGroup from_elements(std::vector<Element> elems,
                                     const kernels::ElementMul& mul,
                                     bool parallel = true);

  // Adopts a precomputed table (row-major indices) and verifies it.
  static ConcreteGroup from_table(std::vector<Element> elems,
                                  std::vector<uint32_t> table,
                                  bool parallel = false);

  size_t size() const { return elems_.size(); }
  const Element& element(size_t i) const { return elems_[i]; }
  const std::vector<Element>& elements() const { return elems_; }
  size_t index_of(const Element& e) const;  // throws if absent
  bool contains(const Element& e) const;

  size_t mul(size_t i, size_t j) const { return table_[i * size() + j]; }
  size_t inv(size_t i) const { return inv_[i]; }
  size_t identity() const { return id_; }
  size_t conj(size_t g, size_t x) const {
    return mul(mul(g, x), inv(g));
  }
  long long order_of(size_t i) const;
  bool is_abelian() const;

  // Subgroups are sorted index vectors.
  std::vector<size_t> subgroup_closure(const std::vector<size_t>& gens) const;
  bool is_subgroup(const std::vector<size_t>& sub) const;
  bool is_normal(const std::vector<size_t>& sub) const;
  std::vector<size_t> intersection(const std::vector<size_t>& a,
                                   const std::vector<size_t>& b) const;
  // Product set {a*b : a in A, b in B}, closed under the hypothesis that
  // one factor normalizes the other; verified by the caller if needed.
  std::vector<size_t> product_set(const std::vector<size_t>& a,
                                  const std::vector<size_t>& b) const;
  std::vector<size_t> commutator_subgroup() const;
  std::vector<size_t> full_subgroup() const;
  std::vector<size_t> trivial_subgroup() const;

  // Quotient by a verified normal subgroup; cosets are labelled by their
  // smallest member element.
  GroupQuotient quotient_by(const std::vector<size_t>& normal_sub) const;

  // Invariant factors d1 | d2 | ... | dk of the abelianization, ascending.
  std::vector<long long> abelian_invariants() const;

 private:
  ConcreteGroup() = default;
  void verify(bool parallel);

  std::vector<Element> elems_;
  std::vector<std::pair<Element, uint32_t>> sorted_;  // lookup view
  std::vector<uint32_t> table_;
  std::vector<uint32_t> inv_;
  size_t id_ = 0;
};

struct GroupQuotient {
  ConcreteGroup group;
  std::vector<size_t> proj;  // element index -> coset index
};

// One fingerprint row per substitution level: free Z leaves are replaced
// by Z_N, the construction shifts are quotiented at the same N, and the
// resulting finite group is summarized by its order and the invariant
// factors of its abelianization.
struct FingerprintRow {
  long long N = 0;
  Int order;
  bool computed = false;  // false when the order exceeded the cap
  std::vector<long long> abelian_invariants;
};

bool operator==(const FingerprintRow& a, const FingerprintRow& b);

std::vector<FingerprintRow> invariant_fingerprint(const GroupExpr& expr,
                                                  int depth,
                                                  const Int& cap = Int(2000));

}  // namespace morbit
