#pragma once

#include <optional>
#include <random>
#include <vector>

#include "morbit/element.hpp"
#include "morbit/group_expr.hpp"

namespace morbit {

/// Throws std::invalid_argument unless e has the shape required by expr
/// (tuple arities match, integer coordinates sit where they belong, residues
/// are in canonical range).
void require_shape(const GroupExpr& expr, const Element& e);
bool shape_ok(const GroupExpr& expr, const Element& e);

Element identity_element(const GroupExpr& expr);
Element mul(const GroupExpr& expr, const Element& u, const Element& v);
Element inverse(const GroupExpr& expr, const Element& u);
Element power(const GroupExpr& expr, const Element& u, const Int& n);
Element conjugate(const GroupExpr& expr, const Element& g, const Element& u);

struct OrderResult {
  enum class Status { Finite, ExceedsBound, Infinite };
  Status status;
  Int order;  // valid when finite
};

/// Exact order of u, the bound-exceeded sentinel, or the infinite sentinel
/// (any nonzero Z-valued coordinate forces infinite order).
OrderResult element_order(const GroupExpr& expr, const Element& u,
                          long long bound);

/// Independent multiplication for the twisted construction: applies the
/// coordinate-shift automorphism one step at a time (inverse steps for
/// negative shifts) instead of the closed-form indexing.
Element twisted_mul_oracle(const GroupExpr& expr, const Element& u,
                           const Element& v);

/// Applies an involutive automorphism to an element of the group h_expr.
Element gamma_apply(const GroupExpr& h_expr, const Involution& gamma,
                    const Element& x);

/// Checks gamma^2 = id and gamma(xy) = gamma(x)gamma(y) on sample_count
/// seeded samples (exhaustively when the group is finite and small).
struct InvolutionCheck {
  bool involutive = true;
  bool homomorphic = true;
  std::optional<Element> witness;
};
InvolutionCheck check_involution(const GroupExpr& h_expr,
                                 const Involution& gamma, unsigned seed,
                                 int sample_count = 200);

Element sample_element(const GroupExpr& expr, std::mt19937_64& rng,
                       long long int_range = 8);

/// Canonical projection onto the acting Z for IntLine, WrZ and TwistedWrZ
/// (raw shift value; IntLine maps identically).
Int canonical_eta(const GroupExpr& expr, const Element& e);
/// The canonical eta-preimage of 1: identity tuple with shift 1.
Element shift_generator(const GroupExpr& expr);
/// Copy of e with its acting-Z coordinate replaced by zero.
Element with_zero_shift(const GroupExpr& expr, const Element& e);

/// Finite quotient semantics: every construction-level shift coordinate is
/// taken mod period*N (period m for WrZ, pairwise (m, n) for WrZZ, 2m for
/// TwistedWrZ); already-finite coordinates are untouched.  Expressions with
/// an IntLine leaf are not quotientable.
bool quotientable(const GroupExpr& expr);
Int quotient_order(const GroupExpr& expr, long long N);
Element quotient_identity(const GroupExpr& expr, long long N);
Element quotient_mul(const GroupExpr& expr, long long N, const Element& u,
                     const Element& v);
Element quotient_inverse(const GroupExpr& expr, long long N, const Element& u);
Element quotient_twisted_mul_oracle(const GroupExpr& expr, long long N,
                                    const Element& u, const Element& v);
/// All elements in canonical enumeration order; throws when the order
/// exceeds cap.
std::vector<Element> quotient_elements(const GroupExpr& expr, long long N,
                                       const Int& cap);
Element quotient_sample(const GroupExpr& expr, long long N,
                        std::mt19937_64& rng);

/// Replaces every IntLine leaf by Cyclic(N); used by fingerprinting, where
/// the finite quotients of a free Z coordinate are Z_N.
GroupExpr substitute_int_line(const GroupExpr& expr, long long N);

}  // namespace morbit
