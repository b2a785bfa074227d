#pragma once

// Split epimorphisms onto Z, 3x3 commutative diagrams of finite groups,
// and the two characterization isomorphisms for the wreath-type products.
// Everything here is a verifier: the isomorphisms are rebuilt through
// generic conjugation/product arithmetic and checked element by element
// (exhaustively on finite quotients, sampled on infinite groups).

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "morbit/concrete_group.hpp"
#include "morbit/group_expr.hpp"
#include "morbit/group_ops.hpp"

namespace morbit {

// --- generic verification reports -----------------------------------------

struct CheckItem {
  std::string name;
  bool ok = true;
  std::string detail;  // counterexample or note, empty when ok
};

struct VerifyReport {
  std::vector<CheckItem> items;
  bool ok() const;
  void add(std::string name, bool ok, std::string detail = "");
  std::string summary() const;  // multi-line, one item per line
};

// --- table-group homomorphism helpers --------------------------------------

bool is_index_homomorphism(const ConcreteGroup& X, const ConcreteGroup& Y,
                           const std::vector<uint32_t>& map);
std::vector<size_t> kernel_of_map(const ConcreteGroup& X,
                                  const ConcreteGroup& Y,
                                  const std::vector<uint32_t>& map);
std::vector<size_t> image_of_map(const ConcreteGroup& Y,
                                 const std::vector<uint32_t>& map);

// --- epimorphism onto Z and the splitting isomorphism ----------------------

// A group together with an evaluable epimorphism eta onto Z (or onto the
// residues mod q when quotiented) and a distinguished g with eta(g) = 1.
struct EpiToZ {
  GroupExpr expr;
  std::function<Int(const Element&)> eta;
  Element g;
  std::function<Element(std::mt19937_64&)> sample_b;  // ambient sampler
  std::function<Element(std::mt19937_64&)> sample_l;  // kernel sampler
};

// The canonical eta for IntLine, WrZ and TwistedWrZ expressions.
EpiToZ canonical_epi(const GroupExpr& expr, long long int_range = 6);

// Direction of the conjugation used to realize the semidirect action:
// ConjByG takes phi(v) = g v g^-1, ConjByGInv takes phi(v) = g^-1 v g.
enum class ConjConvention { ConjByG, ConjByGInv };

struct PairWitness {
  Element a;
  Element b;
  std::string what;
};

struct SplitOptions {
  int samples = 1000;
  unsigned seed = 1;
  ConjConvention convention = ConjConvention::ConjByG;
  bool probe_only = false;  // collect the report instead of throwing
};

struct SplitWitness {
  ConjConvention convention;
  // theta(v, k) = v * g^k, from L x| Z to B
  std::function<Element(const Element&, const Int&)> theta;
  std::function<Element(const Element&)> phi;
  VerifyReport report;
  std::optional<PairWitness> failure;
};

SplitWitness split_by_eta(const EpiToZ& b, const SplitOptions& opts = {});

// --- equivalence of the two shift-compatibility conditions -----------------

struct ShiftCompatResult {
  bool q_phi_commutes = true;   // q(phi(a)) == phi'(q(a)) on all samples
  bool zeta_homomorphic = true; // (a,k) |-> (q(a),k) preserves products
  bool agree = true;            // the two conditions matched on every sample
  std::optional<PairWitness> witness;  // first failing sample, if any
};

ShiftCompatResult check_shift_compat(
    const GroupExpr& L, const GroupExpr& Lp,
    const std::function<Element(const Element&)>& q,
    const std::function<Element(const Element&)>& phi,
    const std::function<Element(const Element&)>& phi_prime,
    const std::vector<Element>& l_samples, long long max_shift = 4);

// --- the 3x3 diagram of two normal subgroups -------------------------------

struct Arrow {
  int from = 0, to = 0;  // node indices
  std::vector<uint32_t> map;
  std::string name;
};

struct SequenceCheck {
  std::string name;
  bool maps_homomorphic = true;
  bool injective = true;
  bool surjective = true;
  bool exact_middle = true;  // image of the first map == kernel of the second
  bool ok() const {
    return maps_homomorphic && injective && surjective && exact_middle;
  }
};

// Node layout, row-major:
//   0: K = A cap L   1: A       2: A/K
//   3: L             4: B       5: B/L
//   6: L/K           7: B/A     8: B/(A*L)
// Rows and columns are all short exact; six sequences are verified.
struct ThreeByThree {
  std::vector<ConcreteGroup> nodes;
  std::vector<std::string> labels;
  std::vector<Arrow> arrows;  // 12: two per row, two per column
  std::vector<SequenceCheck> sequences;
  bool ok() const;
};

ThreeByThree build_3x3(const ConcreteGroup& B, const std::vector<size_t>& A,
                       const std::vector<size_t>& L);

// --- characterization isomorphisms ------------------------------------------

// Direction of the conjugations c_i used in the characterization map
// theta(a_0..a_{m-1}; k) = prod_i c_i(a_i) * g^k.  ConjNeg takes
// c_i(x) = g^-i x g^i (the direction compatible with the left-shift
// product rule used here); ConjPos takes c_i(x) = g^i x g^-i.
enum class ThetaConvention { ConjNeg, ConjPos };

struct ThetaOptions {
  long long N = 1;  // quotient multiplier for the synthesized B
  Int cap = Int(2000);
  ThetaConvention convention = ThetaConvention::ConjNeg;
  bool with_trivial_P = true;  // run the 3x3 part with P = {e}
  bool with_full_P = true;     // and with P = G (and Q = H)
  bool parallel = true;
};

// Synthesizes B as the finite quotient of WrZ(G, m) at multiplier N,
// re-derives theta through generic products and conjugations, and checks
// the lemma's hypotheses and conclusions exhaustively.
VerifyReport verify_theta_wreath(const GroupExpr& G, long long m,
                                 const ThetaOptions& opts = {});

// Same for the twisted product (G,H) with involution gamma.
VerifyReport verify_theta_twisted(const GroupExpr& G, const GroupExpr& H,
                                  const Involution& gamma, long long m,
                                  const ThetaOptions& opts = {});

}  // namespace morbit
