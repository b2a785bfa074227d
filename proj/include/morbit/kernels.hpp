#pragma once

// Bulk kernels that back the finite-group and linear-algebra layers:
// Cayley-table construction, associativity and Latin-square sweeps, a
// generic pair sweep, and exact rational rank.  Each kernel has a serial
// reference implementation and an OpenMP variant; the parallel ones are
// deterministic (failure reports always pick the smallest index) so the
// two can be compared bit-for-bit in tests and in tools/bench.

#include <cstdint>
#include <functional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "morbit/element.hpp"

namespace morbit::kernels {

using Rational = boost::multiprecision::cpp_rational;

struct TableBuildResult {
  std::vector<uint32_t> table;  // row-major n*n, table[i*n+j] = index of ei*ej
  bool closed = true;           // false if some product left the element set
  uint32_t bad_i = 0, bad_j = 0;
};

using ElementMul = std::function<Element(const Element&, const Element&)>;

TableBuildResult build_cayley_table_serial(const std::vector<Element>& elems,
                                           const ElementMul& mul);
TableBuildResult build_cayley_table_parallel(const std::vector<Element>& elems,
                                             const ElementMul& mul);

struct AssocResult {
  bool ok = true;
  uint32_t i = 0, j = 0, k = 0;  // smallest failing triple when !ok
};

AssocResult check_associativity_serial(const std::vector<uint32_t>& table,
                                       size_t n);
AssocResult check_associativity_parallel(const std::vector<uint32_t>& table,
                                         size_t n);

bool is_latin_serial(const std::vector<uint32_t>& table, size_t n);
bool is_latin_parallel(const std::vector<uint32_t>& table, size_t n);

struct PairSweepResult {
  bool ok = true;
  size_t i = 0, j = 0;  // smallest failing pair when !ok
};

using PairPredicate = std::function<bool(size_t, size_t)>;

PairSweepResult pair_sweep_serial(size_t rows, size_t cols,
                                  const PairPredicate& pred);
PairSweepResult pair_sweep_parallel(size_t rows, size_t cols,
                                    const PairPredicate& pred);

// Exact rank by fraction-free-ish Gaussian elimination over the rationals.
// The matrix is consumed by value.
size_t rational_rank_serial(std::vector<std::vector<Rational>> mat);
size_t rational_rank_parallel(std::vector<std::vector<Rational>> mat);

}  // namespace morbit::kernels
