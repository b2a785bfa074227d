// Acceptance gate for the library: eleven end-to-end criteria, one verdict
// line each, nonzero exit when any of them fails.  Runs against the same
// fixture set as the unit suite plus the installed CLI binary.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "morbit/cellular.hpp"
#include "morbit/concrete_group.hpp"
#include "morbit/decomposition.hpp"
#include "morbit/exact_seq.hpp"
#include "morbit/group_ops.hpp"
#include "morbit/pi1.hpp"
#include "morbit/poly.hpp"

using namespace morbit;

namespace {

bool g_all_ok = true;

void verdict(int idx, const std::string& what, bool ok,
             const std::string& note = "") {
  std::cout << "criterion " << idx << " (" << what << "): "
            << (ok ? "PASS" : "FAIL");
  if (!note.empty()) std::cout << "  [" << note << "]";
  std::cout << "\n";
  std::cout.flush();
  if (!ok) g_all_ok = false;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fixture_path(const std::string& name) {
  return std::string(MORBIT_FIXTURE_DIR) + "/" + name;
}

std::string slurp(const std::string& name) {
  std::ifstream in(fixture_path(name));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the CLI, captures stdout, returns the exit status (-1 on failure
// to launch).
int run_cli(const std::string& args, std::string* out) {
  std::string cmd = std::string("\"") + MORBIT_CLI_PATH + "\" " + args;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return -1;
  char buf[4096];
  out->clear();
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out->append(buf, got);
  int st = pclose(p);
  if (st == -1 || !WIFEXITED(st)) return -1;
  return WEXITSTATUS(st);
}

std::string extract_line(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(key, 0) == 0) return line.substr(key.size());
  return "";
}

GroupExpr random_leaf(std::mt19937_64& rng) {
  switch (rng() % 4) {
    case 0: return unit();
    case 1: return int_line();
    case 2: return cyclic(2);
    default: return cyclic(3);
  }
}

GroupExpr random_base(std::mt19937_64& rng) {
  if (rng() % 3 == 0)
    return make_direct({random_leaf(rng), random_leaf(rng)});
  return random_leaf(rng);
}

Involution random_gamma(std::mt19937_64& rng) {
  return rng() % 2 ? Involution::inversion() : Involution::identity();
}

// --- criterion bodies -------------------------------------------------------

void criterion_1() {
  struct Fx {
    const char* file;
    const char* expr;
  };
  const std::vector<Fx> fx = {
      {"case_a_b3.json", "Wr(Z x Z x Z x Wr(Z, 2), 3)"},
      {"case_a_b1.json", "Z x Z x Wr(Z, 3)"},
      {"case_b_m2.json", "TwWr(1, Z x Z x Z x Z, id, 2)"},
      {"case_b_m1.json", "TwWr(1, Wr(Z, 2), id, 1)"},
      {"case_c_m1.json", "TwWr(Z, Z x Z x Z, id, 1)"},
      {"case_c_m3.json", "TwWr(Wr(Z, 5), Z x Z, id, 3)"},
  };
  bool ok = true;
  std::string note;
  for (const auto& f : fx) {
    auto t0 = std::chrono::steady_clock::now();
    std::string out;
    int st = run_cli("pi1 \"" + fixture_path(f.file) + "\"", &out);
    double dt = seconds_since(t0);
    std::string got = extract_line(out, "expression: ");
    if (st != 0 || got != f.expr || dt >= 1.0) {
      ok = false;
      note = std::string(f.file) + " -> '" + got + "' exit " +
             std::to_string(st);
      break;
    }
  }
  verdict(1, "six figure fixtures through the CLI, under 1s each", ok, note);
}

void criterion_2() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20001);
  const int kTriples = 1000;
  bool ok = true;
  std::string note;
  for (int kind = 0; kind < 6 && ok; ++kind) {
    GroupExpr expr;
    for (int t = 0; t < kTriples && ok; ++t) {
      if (t % 10 == 0) {
        long long m = 1 + static_cast<long long>(rng() % 4);
        long long n = 1 + static_cast<long long>(rng() % 4);
        switch (kind) {
          case 0: expr = wr_z(random_base(rng), m); break;
          case 1: expr = wr_zm(random_base(rng), m); break;
          case 2: expr = wr_zz(random_base(rng), m, n); break;
          case 3: expr = wr_zzmn(random_base(rng), m, n); break;
          case 4:
            expr = twisted_wr_z(random_base(rng), random_base(rng),
                                random_gamma(rng), m);
            break;
          default:
            expr = twisted_wr_zm(random_base(rng), random_base(rng),
                                 random_gamma(rng), m);
        }
      }
      Element u = sample_element(expr, rng, 8);
      Element v = sample_element(expr, rng, 8);
      Element w = sample_element(expr, rng, 8);
      Element id = identity_element(expr);
      bool assoc = mul(expr, mul(expr, u, v), w) == mul(expr, u, mul(expr, v, w));
      bool unit_law = mul(expr, id, u) == u && mul(expr, u, id) == u;
      bool inv_law = mul(expr, u, inverse(expr, u)) == id &&
                     mul(expr, inverse(expr, u), u) == id;
      if (!(assoc && unit_law && inv_law)) {
        ok = false;
        note = "construction " + std::to_string(kind) + " on " +
               format_expr(expr);
      }
    }
  }
  double dt = seconds_since(t0);
  if (dt >= 10.0) {
    ok = false;
    note = "took " + std::to_string(dt) + "s";
  }
  verdict(2, "1000 seeded law triples per construction, under 10s", ok, note);
}

void criterion_3() {
  bool ok = true;
  std::string note;

  auto expr = twisted_wr_z(cyclic(2), cyclic(3), Involution::identity(), 1);
  auto els = quotient_elements(expr, 1, Int(100));
  if (els.size() != 24) {
    ok = false;
    note = "order " + std::to_string(els.size());
  }
  for (size_t i = 0; i < els.size() && ok; ++i)
    for (size_t j = 0; j < els.size() && ok; ++j) {
      auto closed = quotient_mul(expr, 1, els[i], els[j]);
      auto stepped = quotient_twisted_mul_oracle(expr, 1, els[i], els[j]);
      if (!(closed == stepped)) {
        ok = false;
        note = "pair " + els[i].to_string() + ", " + els[j].to_string();
      }
    }

  std::mt19937_64 rng(30001);
  for (int t = 0; t < 1000 && ok; ++t) {
    long long m = 1 + static_cast<long long>(rng() % 4);
    auto e = twisted_wr_z(random_base(rng), random_base(rng),
                          random_gamma(rng), m);
    Element u = sample_element(e, rng, 8);
    Element v = sample_element(e, rng, 8);
    if (!(mul(e, u, v) == twisted_mul_oracle(e, u, v))) {
      ok = false;
      note = "sampled mismatch on " + format_expr(e);
    }
  }
  verdict(3, "closed-form product matches the stepwise oracle", ok, note);
}

void criterion_4() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string note;
  auto take = [&](const char* what, const VerifyReport& r) {
    if (!r.ok() && ok) {
      ok = false;
      note = what;
    }
  };
  take("wreath Z2 m=2", verify_theta_wreath(cyclic(2), 2));
  take("wreath Z3 m=3", verify_theta_wreath(cyclic(3), 3));
  take("wreath Z2 m=4", verify_theta_wreath(cyclic(2), 4));
  take("twisted Z2,Z2,id", verify_theta_twisted(cyclic(2), cyclic(2),
                                                Involution::identity(), 1));
  take("twisted Z2,Z3,id", verify_theta_twisted(cyclic(2), cyclic(3),
                                                Involution::identity(), 1));
  Involution table = Involution::table_map({{parse_element("0"),
                                             parse_element("0")},
                                            {parse_element("1"),
                                             parse_element("2")},
                                            {parse_element("2"),
                                             parse_element("1")}});
  take("twisted Z2,Z3,table", verify_theta_twisted(cyclic(2), cyclic(3),
                                                   table, 1));
  double dt = seconds_since(t0);
  if (dt >= 30.0) {
    ok = false;
    note = "took " + std::to_string(dt) + "s";
  }
  verdict(4, "characterization isomorphisms verify, under 30s", ok, note);
}

void criterion_5() {
  bool ok = true;
  std::string note;
  const std::vector<GroupExpr> bases = {
      cyclic(2), cyclic(3), direct({cyclic(2), cyclic(2)})};
  auto check = [&](const GroupExpr& expr, const Int& expect) {
    for (long long N : {1LL, 2LL, 3LL})
      if (quotient_order(expr, N) != expect) {
        ok = false;
        note = format_expr(expr) + " at N=" + std::to_string(N);
        return;
      }
    if (expect <= 400) {
      auto cg = ConcreteGroup::from_quotient(expr, 1);
      if (Int(cg.size()) != expect) {
        ok = false;
        note = format_expr(expr) + " table size";
      }
    }
  };
  for (const auto& g : bases) {
    Int gi = quotient_order(g, 1);
    for (long long m = 1; m <= 3 && ok; ++m) {
      Int expect = m;
      for (long long i = 0; i < m; ++i) expect *= gi;
      check(wr_zm(g, m), expect);
    }
  }
  for (const auto& g : bases)
    for (const auto& h : bases)
      for (long long m = 1; m <= 2 && ok; ++m) {
        Int gi = quotient_order(g, 1), hi = quotient_order(h, 1);
        Int expect = 2 * m;
        for (long long i = 0; i < 2 * m; ++i) expect *= gi;
        for (long long i = 0; i < m; ++i) expect *= hi;
        check(twisted_wr_zm(g, h, Involution::identity(), m), expect);
      }
  verdict(5, "finite form orders match the closed formulas", ok, note);
}

void criterion_6() {
  bool ok = true;
  std::string note;
  const std::vector<GroupExpr> cases = {
      wr_z(cyclic(2), 1),
      wr_z(cyclic(3), 1),
      wr_z(unit(), 1),
      wr_zz(cyclic(3), 2, 1),
      wr_zz(cyclic(2), 1, 1),
      twisted_wr_z(cyclic(2), unit(), Involution::identity(), 1),
      twisted_wr_z(cyclic(2), unit(), Involution::identity(), 2),
      twisted_wr_z(cyclic(2), unit(), Involution::inversion(), 1),
      twisted_wr_z(cyclic(3), unit(), Involution::identity(), 1),
      direct({cyclic(2), direct({cyclic(3), unit()})}),
      direct({unit(), wr_z(cyclic(2), 1)}),
      wr_z(wr_z(cyclic(2), 1), 1),
  };
  for (const auto& e : cases) {
    auto n = normalize(e);
    if (equal(e, n)) {
      ok = false;
      note = "rewrite did not fire on " + format_expr(e);
      break;
    }
    auto before = invariant_fingerprint(e, 4);
    auto after = invariant_fingerprint(n, 4);
    bool same = before.size() == after.size();
    for (size_t i = 0; same && i < before.size(); ++i)
      same = before[i] == after[i] && before[i].computed;
    if (!same) {
      ok = false;
      note = format_expr(e) + " vs " + format_expr(n);
      break;
    }
  }
  verdict(6, "rewrites preserve finite fingerprints at depths 1..4", ok, note);
}

void criterion_7() {
  bool ok = true;
  std::string note;
  std::mt19937_64 rng(70001);
  RandomDecompositionOptions opts;

  int checked = 0;
  for (int trial = 0; trial < 30 && ok; ++trial) {
    auto dec = random_decomposition(rng, opts);
    auto w = decomposition_to_cw(dec);
    for (long long k = 0; k <= 2 * dec.b() && ok; ++k) {
      auto rep = lefschetz_check(power(w, k));
      ++checked;
      if (!rep.ok || rep.lefschetz != 1) {
        ok = false;
        note = "synthesized power " + std::to_string(k);
      }
    }
  }

  for (int trial = 0; trial < 50 && ok; ++trial) {
    auto dec = random_decomposition(rng, opts);
    auto w = decomposition_to_cw(dec);
    auto rep = lefschetz_check(identity_automorphism(w.complex));
    if (!rep.ok) {
      ok = false;
      note = "identity map, trial " + std::to_string(trial);
    }
  }

  int detected = 0;
  const int kTrials = 1000;
  for (int trial = 0; trial < kTrials && ok; ++trial) {
    auto dec = random_decomposition(rng, opts);
    auto w = decomposition_to_cw(dec);
    long long k = static_cast<long long>(rng() % (2 * dec.b() + 1));
    auto t = power(w, k);
    // collect cells the power leaves in place and flip one orientation
    std::vector<std::pair<int, size_t>> invariant;
    for (size_t i = 0; i < t.p1.target.size(); ++i)
      if (t.p1.target[i] == i) invariant.push_back({1, i});
    for (size_t i = 0; i < t.p2.target.size(); ++i)
      if (t.p2.target[i] == i) invariant.push_back({2, i});
    if (invariant.empty()) {
      t = power(w, 0);
      for (size_t i = 0; i < t.p2.target.size(); ++i)
        invariant.push_back({2, i});
    }
    auto [dim, cell] = invariant[rng() % invariant.size()];
    if (dim == 1)
      t.p1.sign[cell] = -t.p1.sign[cell];
    else
      t.p2.sign[cell] = -t.p2.sign[cell];
    try {
      auto rep = lefschetz_check(t);
      if (!rep.ok) ++detected;
    } catch (const std::invalid_argument&) {
      ++detected;
    }
  }
  if (ok && detected < (kTrials * 99) / 100) {
    ok = false;
    note = "tampering detected only " + std::to_string(detected) + "/1000";
  }
  verdict(7, "trace formula holds and tampering is caught", ok,
          ok ? std::to_string(checked) + " powers, " +
               std::to_string(detected) + "/1000 tampers caught"
             : note);
}

void criterion_8() {
  bool ok = true;
  std::string note;
  std::mt19937_64 rng(80001);
  RandomDecompositionOptions opts;
  for (int trial = 0; trial < 200 && ok; ++trial) {
    auto dec = random_decomposition(rng, opts);
    auto w = decomposition_to_cw(dec);
    for (long long k = 0; k <= 2 * dec.b() && ok; ++k) {
      auto probe = ker_s_act_probe(power(w, k));
      if (!probe.agree || probe.all_true != (k % dec.b() == 0)) {
        ok = false;
        note = "trial " + std::to_string(trial) + " power " +
               std::to_string(k);
      }
    }
  }

  // hand-built violation: a loop with a flipped orientation makes the
  // seven conditions split, and the probe must say so
  auto cx = std::make_shared<CwComplex>();
  cx->c0 = 1;
  cx->c1 = 1;
  cx->c2 = 1;
  cx->edge_ends = {{0, 0}};
  cx->faces = {{0}};
  cx->c0_cell = 0;
  cx->q0_edges = {0};
  auto w = identity_automorphism(cx);
  w.p1.sign[0] = -1;
  if (ker_s_act_probe(w).agree) {
    ok = false;
    note = "adversarial loop complex not reported";
  }
  verdict(8, "seven kernel conditions agree and violations are reported", ok,
          note);
}

void criterion_9() {
  bool ok = true;
  std::string note;
  for (const char* bad : {"bad_parity_even_b.json", "bad_parity_odd_b.json",
                          "bad_count.json"}) {
    auto rep = validate_decomposition(decomposition_from_json(slurp(bad)));
    if (rep.ok()) {
      ok = false;
      note = std::string(bad) + " accepted";
    }
  }
  for (const char* good :
       {"case_a_b3.json", "case_a_b1.json", "case_b_m2.json",
        "case_b_m1.json", "case_c_m1.json", "case_c_m3.json"}) {
    auto rep = validate_decomposition(decomposition_from_json(slurp(good)));
    if (!rep.ok()) {
      ok = false;
      note = std::string(good) + " rejected";
    }
  }
  verdict(9, "validator rejects parity/count violations, accepts fixtures",
          ok, note);
}

void criterion_10() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string note;
  std::mt19937_64 rng(100001);
  for (int t = 0; t < 100 && ok; ++t) {
    auto g = random_squarefree(rng, 8, 10);
    for (char var : {'x', 'y'}) {
      auto cert = jacobian_certificate(g, var);
      if (!cert.verify(g)) {
        ok = false;
        note = "certificate " + std::string(1, var) + " on " + g.to_string();
      }
    }
  }
  auto m1 = milnor_number(HomogeneousPoly::parse("x*y"));
  auto m2 = milnor_number(HomogeneousPoly::parse("x^3 - 3*x*y^2"));
  if (m1.mu != 1 || m1.mu_at_recheck != 1) {
    ok = false;
    note = "milnor(x*y) = " + std::to_string(m1.mu);
  }
  if (m2.mu != 4 || m2.mu_at_recheck != 4) {
    ok = false;
    note = "milnor(x^3 - 3*x*y^2) = " + std::to_string(m2.mu);
  }
  double dt = seconds_since(t0);
  if (dt >= 30.0) {
    ok = false;
    note = "took " + std::to_string(dt) + "s";
  }
  verdict(10, "random certificates expand to zero, milnor numbers exact",
          ok, note);
}

void criterion_11() {
  bool ok = true;
  std::string note;

  GroupExpr z3 = direct({int_line(), int_line(), int_line()});
  GroupExpr z17 = direct(std::vector<GroupExpr>(17, int_line()));
  auto showcase = wr_z(direct({wr_z(z3, 5), wr_z(z17, 2)}), 11);
  if (!is_in_class_G(showcase)) {
    ok = false;
    note = "showcase product";
  }

  for (const char* file : {"case_a_b3.json", "case_a_b1.json"}) {
    auto r = pi1_mobius(decomposition_from_json(slurp(file)));
    if (!(r.in_class_g && is_in_class_G(r.expression))) {
      ok = false;
      note = std::string(file) + " output not in the class";
    }
  }
  std::mt19937_64 rng(110001);
  RandomDecompositionOptions opts;
  opts.max_e = 0;  // untwisted bands only, so every outcome is case A
  for (int t = 0; t < 50 && ok; ++t) {
    auto dec = random_decomposition(rng, opts);
    // closure statement applies when the constituent groups are themselves
    // in the class, so swap out the generator's finite cyclic picks
    if (!is_in_class_G(dec.cylinder_group)) dec.cylinder_group = int_line();
    for (auto& disk : dec.disks)
      if (!is_in_class_G(disk.group)) disk.group = int_line();
    auto r = pi1_mobius(dec);
    if (!(r.case_tag == "A" && is_in_class_G(r.expression))) {
      ok = false;
      note = "random untwisted band left the class";
    }
  }
  for (const char* file : {"case_b_m2.json", "case_b_m1.json",
                           "case_c_m1.json", "case_c_m3.json"}) {
    auto r = pi1_mobius(decomposition_from_json(slurp(file)));
    if (is_in_class_G(r.expression)) {
      ok = false;
      note = std::string(file) + " wrongly in the class";
    }
  }
  if (is_in_class_G(parse_expr("TwWr(Z2, Z3, id, 2)"))) {
    ok = false;
    note = "twisted product wrongly in the class";
  }
  verdict(11, "wreath-closed class membership", ok, note);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  std::cout << (g_all_ok ? "all criteria passed\n" : "FAILURES above\n");
  return g_all_ok ? 0 : 1;
}
