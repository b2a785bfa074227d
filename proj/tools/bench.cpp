// Compares the serial reference kernels against the OpenMP variants and
// checks that both produce identical results: Cayley table construction,
// associativity and Latin-square sweeps on a wreath quotient, and exact
// rational rank on a dense structured matrix.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>

#include "morbit/concrete_group.hpp"
#include "morbit/group_ops.hpp"
#include "morbit/kernels.hpp"

using namespace morbit;

namespace {

double seconds(const std::function<void()>& fn) {
  auto start = std::chrono::steady_clock::now();
  fn();
  std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
  return dt.count();
}

void row(const std::string& name, double serial, double parallel, bool same) {
  std::printf("%-28s %10.4fs %10.4fs %9.2fx   %s\n", name.c_str(), serial,
              parallel, parallel > 0 ? serial / parallel : 0.0,
              same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  long long m = 7;
  if (argc > 1) m = std::atoll(argv[1]);
  size_t dim = 96;  // rank benchmark size; entries grow fast under exact pivoting
  if (argc > 2) dim = static_cast<size_t>(std::atoll(argv[2]));

  GroupExpr expr = wr_z(cyclic(2), m);
  std::vector<Element> elems =
      quotient_elements(expr, 1, Int(1) << 20);  // 2^m * m elements
  auto mulfn = [&](const Element& u, const Element& v) {
    return quotient_mul(expr, 1, u, v);
  };
  std::cout << "group " << format_expr(expr) << " quotient at N=1: "
            << elems.size() << " elements\n\n";
  std::printf("%-28s %11s %11s %10s\n", "kernel", "serial", "parallel",
              "speedup");

  kernels::TableBuildResult ts, tp;
  double t1 = seconds([&] { ts = kernels::build_cayley_table_serial(elems, mulfn); });
  double t2 = seconds([&] { tp = kernels::build_cayley_table_parallel(elems, mulfn); });
  row("cayley table build", t1, t2, ts.table == tp.table && ts.closed && tp.closed);

  kernels::AssocResult as, ap;
  size_t n = elems.size();
  t1 = seconds([&] { as = kernels::check_associativity_serial(ts.table, n); });
  t2 = seconds([&] { ap = kernels::check_associativity_parallel(ts.table, n); });
  row("associativity sweep", t1, t2, as.ok == ap.ok && as.ok);

  bool ls = false, lp = false;
  t1 = seconds([&] { ls = kernels::is_latin_serial(ts.table, n); });
  t2 = seconds([&] { lp = kernels::is_latin_parallel(ts.table, n); });
  row("latin square sweep", t1, t2, ls == lp && ls);

  // Dense rational matrix with a known-rank structure plus noise rows.
  std::mt19937_64 rng(42);
  std::vector<std::vector<kernels::Rational>> mat(
      dim, std::vector<kernels::Rational>(dim));
  for (size_t i = 0; i < dim; ++i)
    for (size_t j = 0; j < dim; ++j) {
      long long num = static_cast<long long>(rng() % 19) - 9;
      long long den = 1 + static_cast<long long>(rng() % 7);
      mat[i][j] = kernels::Rational(num, den);
    }
  size_t rs = 0, rp = 0;
  t1 = seconds([&] { rs = kernels::rational_rank_serial(mat); });
  t2 = seconds([&] { rp = kernels::rational_rank_parallel(mat); });
  row("rational rank " + std::to_string(dim) + "x" + std::to_string(dim), t1,
      t2, rs == rp);

  std::cout << "\nrank = " << rs << ", table order = " << n << "\n";
  return 0;
}
