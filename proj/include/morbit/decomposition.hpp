#pragma once

// Combinatorial model of a special decomposition of the Mobius band: one
// boundary cylinder with c boundary edges, n disks, and the signed action of
// the order-b cyclic mapping class generator on those disks.

#include <random>
#include <string>
#include <vector>

#include "morbit/exact_seq.hpp"
#include "morbit/group_expr.hpp"

namespace morbit {

struct DiskRecord {
  GroupExpr group;         // pi_1 of the function orbit restricted to the disk
  GroupExpr delta;         // optional leaf-preserving subgroup (may be null)
};

// Image of (disk, +1) under the generator action.  The image of (disk, -1)
// is (target, -sign), so one row per disk determines the signed permutation.
struct SignedTarget {
  long long target = 0;  // 1-based disk index
  int sign = 1;          // +1 or -1
};

struct MobiusDecomposition {
  GroupExpr cylinder_group;        // the A factor of the boundary cylinder
  long long a = 1;                 // minimal realized boundary shift, a | c
  long long c = 1;                 // number of boundary edges of the cylinder
  std::vector<DiskRecord> disks;   // disk i is disks[i-1]
  std::vector<SignedTarget> sigma; // one row per disk
  std::string gamma = "id";        // involution spec: "id", "inv", "perm[2,1]"

  long long n() const { return static_cast<long long>(disks.size()); }
  long long b() const { return a > 0 ? c / a : 0; }
};

// Applies the generator action once to a signed disk.
std::pair<long long, int> apply_sigma(const MobiusDecomposition& d,
                                      long long disk, int sign);

// Checks every structural invariant and reports each with a witness.
// Violations are report content, not exceptions.
VerifyReport validate_decomposition(const MobiusDecomposition& d);

enum class OrbitType { T1, T2 };

struct OrbitRecord {
  OrbitType type = OrbitType::T1;
  long long representative = 0;  // smallest 1-based disk index in the orbit
  GroupExpr representative_group;
  GroupExpr representative_delta;  // may be null
  long long length = 0;            // number of distinct disks
  std::vector<long long> disk_indices;
};

// Partitions disks into generator orbits, typed T2 exactly when (Y,+1) and
// (Y,-1) lie in the same signed orbit.  Throws on invalid decompositions.
std::vector<OrbitRecord> classify_orbits(const MobiusDecomposition& d);

// eta of a raw boundary shift: shift/a.  Throws if a does not divide shift.
long long eta_value(const MobiusDecomposition& d, long long shift);

// JSON round trip.  Schema:
// { "cylinder_group": "1", "a": 4, "c": 12,
//   "disks": [{"group": "Z"}, ...], "sigma": [[4, 1], ...], "gamma": "id" }
MobiusDecomposition decomposition_from_json(const std::string& text);
std::string decomposition_to_json(const MobiusDecomposition& d);

struct RandomDecompositionOptions {
  long long max_d = 3;
  long long max_e = 3;
  long long max_b = 6;            // odd values used when e = 0
  bool shuffle_disks = true;      // exercise renumbering invariance
  bool random_signs = true;       // nontrivial sign patterns along orbits
  bool with_delta = false;        // attach Unit deltas for diagram tests
  bool cw_compatible = true;      // keep (a, d, e) within the CW synthesizer
};

// Generates a decomposition that passes validate_decomposition.
MobiusDecomposition random_decomposition(std::mt19937_64& rng,
                                         const RandomDecompositionOptions& o =
                                             RandomDecompositionOptions{});

}  // namespace morbit
