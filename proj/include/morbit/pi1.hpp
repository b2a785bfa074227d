#pragma once

#include <array>
#include <string>
#include <vector>

#include "morbit/decomposition.hpp"

namespace morbit {

// Orbit fundamental group of the canonical cyclic action attached to a
// Mobius band decomposition.  The expression is always reported in
// normalized form; case_tag records which closed form applied:
//   "A"  no T2 orbits:        A x Wr(G, b)
//   "B"  no T1 orbits:        A x TwWr(1, H, gamma, b/2)
//   "C"  both kinds present:  A x TwWr(G, H, gamma, b/2)
// where A is the cylinder group, G (resp. H) the direct product of the
// T1 (resp. T2) orbit representative groups in orbit order.
struct Pi1Result {
  GroupExpr expression;
  std::string case_tag;  // "A", "B", "C", or "aggregate"
  bool in_class_g = false;
  long long n = 0;  // disks
  long long b = 0;  // period of the action on disks
  long long d = 0;  // T1 orbit count
  long long e = 0;  // T2 orbit count
  long long m = 0;  // b/2 when T2 orbits exist, else 0
};

Pi1Result pi1_mobius(const MobiusDecomposition& dec);

// Builds the Involution used as the twisting datum from its plain
// spelling: "id", "inv", or "perm[i1,i2,...]" (1-based factor images).
Involution involution_from_spec(const std::string& spec);

// A closed non-orientable surface of the given genus carrying up to
// `genus` disjoint decomposed Mobius pieces; the complement contributes
// the background group, which must lie in the wreath-closed class.
struct SurfaceDecomposition {
  long long genus = 2;
  GroupExpr background_group;
  std::vector<MobiusDecomposition> mobius_pieces;
};

// Aggregate orbit fundamental group: background times the piece groups,
// flattened and normalized.  Throws std::invalid_argument when genus < 2,
// when there are more pieces than the genus admits, or when the
// background group falls outside the wreath-closed class.
Pi1Result pi1_nonorientable(const SurfaceDecomposition& s);

SurfaceDecomposition surface_from_json(const std::string& text);
std::string surface_to_json(const SurfaceDecomposition& s);

// The 3x3 commutative diagram of the stabilizer data attached to a
// decomposition whose disks carry distinguished subgroups (delta).
// Nodes are reported row-major in display order:
//   row 0:  Delta^w x 0      S^w x 0        (S/Delta)^w x 0
//   row 1:  Delta^w x pZ     full group     monodromy quotient
//   row 2:  pZ               Z              Z_p
// with w the coordinate width (b, or 2m and m split across G and H in
// the twisted cases) and p the shift period (b resp. 2m).
//
// When every leaf involved admits finite quotients the diagram is also
// instantiated at multiplier N = 2 and all six short sequences are
// verified on the concrete tables; `report` holds the outcome and
// `concrete_checked` records whether that pass ran.
struct BieberbachDiagram {
  std::array<std::string, 9> nodes;
  std::string case_tag;
  bool concrete_checked = false;
  VerifyReport report;
};

BieberbachDiagram bieberbach_diagram(const MobiusDecomposition& dec,
                                     const Int& cap = Int(2000));

}  // namespace morbit
