#pragma once

// CW partition of the projective-plane model (cylinder cell + disk cells
// glued along the critical contour) and cellular automorphisms with signed
// invariant-cell counting.

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "morbit/decomposition.hpp"

namespace morbit {

struct CwComplex {
  size_t c0 = 0, c1 = 0, c2 = 0;
  // Per 1-cell: (tail vertex, head vertex) in a chosen direction.
  std::vector<std::pair<size_t, size_t>> edge_ends;
  // Per 2-cell: boundary edge indices in cyclic order.
  std::vector<std::vector<size_t>> faces;
  size_t c0_cell = 0;             // index of the cylinder 2-cell
  std::vector<size_t> q0_edges;   // its boundary edges
  long long euler() const {
    return static_cast<long long>(c0) - static_cast<long long>(c1) +
           static_cast<long long>(c2);
  }
};

struct SignedPerm {
  std::vector<size_t> target;
  std::vector<int> sign;  // +1 or -1 per cell
};

struct CwAutomorphism {
  std::shared_ptr<const CwComplex> complex;
  std::vector<size_t> p0;  // 0-cells carry no orientation sign
  SignedPerm p1, p2;
};

CwAutomorphism identity_automorphism(std::shared_ptr<const CwComplex> cx);

// x after y; both must live on the same complex.
CwAutomorphism compose(const CwAutomorphism& x, const CwAutomorphism& y);
CwAutomorphism power(const CwAutomorphism& x, long long k);  // k >= 0

// Checks bijectivity and that the permutations respect incidence: edge
// endpoints map per the edge sign, boundary cycles map to rotations of the
// image cycle (reversed rotations for sign -1).
struct CellularityReport {
  bool ok = true;
  std::string why;
};
CellularityReport check_cellular(const CwAutomorphism& w);

struct LefschetzReport {
  long long c0p = 0;                  // invariant vertices
  long long c1p = 0, c1m = 0;         // edges preserving / reversing
  long long c2p = 0, c2m = 0;         // faces preserving / reversing
  long long lefschetz = 0;            // c0p - (c1p - c1m) + (c2p - c2m)
  bool ok = false;                    // lefschetz == 1
};
// Throws invalid_argument on non-cellular input or Euler characteristic != 1.
LefschetzReport lefschetz_check(const CwAutomorphism& w);

// Derived fixed-cell counts of the orientation-preserving sphere lift:
// doubled +counts in dimensions 1 and 2, vertex count forced by L = 2.
struct SphereLiftReport {
  long long c0p_lift = 0, c1p_lift = 0, c2p_lift = 0;
  bool ok = false;
  std::string why;
};
SphereLiftReport sphere_lift_check(const CwAutomorphism& w);

// The seven equivalent characterizations of the non-effectiveness kernel,
// each evaluated independently from the permutation data.
struct KerSActReport {
  std::array<bool, 7> conditions{};
  std::array<std::string, 7> names{};
  bool agree = false;    // all true or all false
  bool all_true = false;
};
KerSActReport ker_s_act_probe(const CwAutomorphism& w);

// Synthesizes the canonical column-model CW partition of a valid
// decomposition together with the generator automorphism (boundary-edge
// shift by a).  Requires d+e >= 1 and a = d+e when T2 orbits are present,
// a >= d+1 otherwise.
CwAutomorphism decomposition_to_cw(const MobiusDecomposition& d);

}  // namespace morbit
