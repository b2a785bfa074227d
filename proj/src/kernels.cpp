#include "morbit/kernels.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace morbit::kernels {

namespace {

// Sorted (element, index) view used for O(log n) product lookup.
struct IndexedSet {
  std::vector<std::pair<Element, uint32_t>> rows;

  explicit IndexedSet(const std::vector<Element>& elems) {
    rows.reserve(elems.size());
    for (uint32_t i = 0; i < elems.size(); ++i) rows.emplace_back(elems[i], i);
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
      return Element::compare(a.first, b.first) < 0;
    });
    for (size_t i = 1; i < rows.size(); ++i)
      if (rows[i - 1].first == rows[i].first)
        throw std::invalid_argument("duplicate element in Cayley table input");
  }

  // Returns n (one past the last index) when absent.
  uint32_t find(const Element& e, uint32_t n) const {
    auto it = std::lower_bound(rows.begin(), rows.end(), e,
                               [](const auto& row, const Element& key) {
                                 return Element::compare(row.first, key) < 0;
                               });
    if (it == rows.end() || it->first != e) return n;
    return it->second;
  }
};

constexpr uint64_t kNoFail = std::numeric_limits<uint64_t>::max();

}  // namespace

TableBuildResult build_cayley_table_serial(const std::vector<Element>& elems,
                                           const ElementMul& mul) {
  size_t n = elems.size();
  IndexedSet idx(elems);
  TableBuildResult out;
  out.table.assign(n * n, 0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      uint32_t k = idx.find(mul(elems[i], elems[j]), static_cast<uint32_t>(n));
      if (k == n) {
        out.closed = false;
        out.bad_i = static_cast<uint32_t>(i);
        out.bad_j = static_cast<uint32_t>(j);
        return out;
      }
      out.table[i * n + j] = k;
    }
  }
  return out;
}

TableBuildResult build_cayley_table_parallel(const std::vector<Element>& elems,
                                             const ElementMul& mul) {
  size_t n = elems.size();
  IndexedSet idx(elems);
  TableBuildResult out;
  out.table.assign(n * n, 0);
  uint64_t first_bad = kNoFail;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) reduction(min : first_bad)
#endif
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    for (size_t j = 0; j < n; ++j) {
      uint32_t k = idx.find(mul(elems[i], elems[j]), static_cast<uint32_t>(n));
      if (k == n) {
        uint64_t code = static_cast<uint64_t>(i) * n + j;
        if (code < first_bad) first_bad = code;
      } else {
        out.table[static_cast<size_t>(i) * n + j] = k;
      }
    }
  }
  if (first_bad != kNoFail) {
    out.closed = false;
    out.bad_i = static_cast<uint32_t>(first_bad / n);
    out.bad_j = static_cast<uint32_t>(first_bad % n);
  }
  return out;
}

namespace {

AssocResult assoc_from_code(uint64_t code, size_t n) {
  AssocResult r;
  if (code == kNoFail) return r;
  r.ok = false;
  r.k = static_cast<uint32_t>(code % n);
  code /= n;
  r.j = static_cast<uint32_t>(code % n);
  r.i = static_cast<uint32_t>(code / n);
  return r;
}

}  // namespace

AssocResult check_associativity_serial(const std::vector<uint32_t>& table,
                                       size_t n) {
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      uint32_t ij = table[i * n + j];
      for (size_t k = 0; k < n; ++k) {
        if (table[ij * n + k] != table[i * n + table[j * n + k]])
          return assoc_from_code((static_cast<uint64_t>(i) * n + j) * n + k, n);
      }
    }
  return {};
}

AssocResult check_associativity_parallel(const std::vector<uint32_t>& table,
                                         size_t n) {
  uint64_t best = kNoFail;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(min : best)
#endif
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    uint64_t local = kNoFail;
    for (size_t j = 0; j < n && local == kNoFail; ++j) {
      uint32_t ij = table[static_cast<size_t>(i) * n + j];
      for (size_t k = 0; k < n; ++k) {
        if (table[ij * n + k] !=
            table[static_cast<size_t>(i) * n + table[j * n + k]]) {
          local = (static_cast<uint64_t>(i) * n + j) * n + k;
          break;
        }
      }
    }
    if (local < best) best = local;
  }
  return assoc_from_code(best, n);
}

bool is_latin_serial(const std::vector<uint32_t>& table, size_t n) {
  std::vector<char> seen(n);
  for (size_t i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (size_t j = 0; j < n; ++j) {
      uint32_t v = table[i * n + j];
      if (v >= n || seen[v]) return false;
      seen[v] = 1;
    }
  }
  for (size_t j = 0; j < n; ++j) {
    std::fill(seen.begin(), seen.end(), 0);
    for (size_t i = 0; i < n; ++i) {
      uint32_t v = table[i * n + j];
      if (v >= n || seen[v]) return false;
      seen[v] = 1;
    }
  }
  return true;
}

bool is_latin_parallel(const std::vector<uint32_t>& table, size_t n) {
  int ok = 1;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(min : ok)
#endif
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    std::vector<char> seen(n, 0);
    for (size_t j = 0; j < n; ++j) {
      uint32_t v = table[static_cast<size_t>(i) * n + j];
      if (v >= n || seen[v]) {
        ok = 0;
        break;
      }
      seen[v] = 1;
    }
  }
  if (!ok) return false;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(min : ok)
#endif
  for (long long j = 0; j < static_cast<long long>(n); ++j) {
    std::vector<char> seen(n, 0);
    for (size_t i = 0; i < n; ++i) {
      uint32_t v = table[i * n + static_cast<size_t>(j)];
      if (v >= n || seen[v]) {
        ok = 0;
        break;
      }
      seen[v] = 1;
    }
  }
  return ok != 0;
}

PairSweepResult pair_sweep_serial(size_t rows, size_t cols,
                                  const PairPredicate& pred) {
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j)
      if (!pred(i, j)) return {false, i, j};
  return {};
}

PairSweepResult pair_sweep_parallel(size_t rows, size_t cols,
                                    const PairPredicate& pred) {
  uint64_t best = kNoFail;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) reduction(min : best)
#endif
  for (long long i = 0; i < static_cast<long long>(rows); ++i) {
    for (size_t j = 0; j < cols; ++j) {
      if (!pred(static_cast<size_t>(i), j)) {
        uint64_t code = static_cast<uint64_t>(i) * cols + j;
        if (code < best) best = code;
        break;
      }
    }
  }
  if (best == kNoFail) return {};
  return {false, static_cast<size_t>(best / cols),
          static_cast<size_t>(best % cols)};
}

namespace {

size_t rational_rank_impl(std::vector<std::vector<Rational>>& mat,
                          bool parallel) {
  size_t rows = mat.size();
  if (rows == 0) return 0;
  size_t cols = mat[0].size();
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t pivot = rows;
    for (size_t r = rank; r < rows; ++r) {
      if (mat[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows) continue;
    std::swap(mat[rank], mat[pivot]);
    const Rational inv_p = Rational(1) / mat[rank][col];
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (parallel && rows - rank > 16)
#endif
    for (long long r = static_cast<long long>(rank) + 1;
         r < static_cast<long long>(rows); ++r) {
      auto& row = mat[static_cast<size_t>(r)];
      if (row[col] == 0) continue;
      Rational f = row[col] * inv_p;
      for (size_t c = col; c < cols; ++c) row[c] -= f * mat[rank][c];
    }
    ++rank;
  }
  (void)parallel;
  return rank;
}

}  // namespace

size_t rational_rank_serial(std::vector<std::vector<Rational>> mat) {
  return rational_rank_impl(mat, false);
}

size_t rational_rank_parallel(std::vector<std::vector<Rational>> mat) {
  return rational_rank_impl(mat, true);
}

}  // namespace morbit::kernels
