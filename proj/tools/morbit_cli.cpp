#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>

#include "morbit/decomposition.hpp"
#include "morbit/exact_seq.hpp"
#include "morbit/group_ops.hpp"
#include "morbit/pi1.hpp"
#include "morbit/poly.hpp"

using nlohmann::json;
using namespace morbit;

namespace {

// Exit codes: 0 success, 1 usage or I/O, 2 validation/verification failure.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailed = 2;

struct Options {
  std::string format = "text";
  unsigned long long seed = 12345;
  long long depth = 1;
  long long cap = 20000;
};

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  ss << in.rdbuf();
  return ss.str();
}

void print_report(const VerifyReport& rep, const Options& opt) {
  if (opt.format == "json") {
    json j;
    j["ok"] = rep.ok();
    json items = json::array();
    for (const auto& it : rep.items) {
      json one;
      one["name"] = it.name;
      one["ok"] = it.ok;
      if (!it.detail.empty()) one["detail"] = it.detail;
      items.push_back(std::move(one));
    }
    j["items"] = std::move(items);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << rep.summary()
              << (rep.ok() ? "all checks passed\n" : "FAILED\n");
  }
}

int report_exit(const VerifyReport& rep) {
  return rep.ok() ? kExitOk : kExitFailed;
}

json pi1_to_json(const Pi1Result& r) {
  json j;
  j["expression"] = format_expr(r.expression);
  j["latex"] = format_expr(r.expression, ExprStyle::Latex);
  j["case"] = r.case_tag;
  j["in_class_G"] = r.in_class_g;
  j["counts"] = {{"n", r.n}, {"b", r.b}, {"d", r.d}, {"e", r.e}, {"m", r.m}};
  return j;
}

void print_pi1(const Pi1Result& r, const Options& opt) {
  if (opt.format == "json") {
    std::cout << pi1_to_json(r).dump(2) << "\n";
  } else if (opt.format == "latex") {
    std::cout << format_expr(r.expression, ExprStyle::Latex) << "\n";
  } else {
    std::cout << "expression: " << format_expr(r.expression) << "\n"
              << "case: " << r.case_tag << "\n"
              << "in_class_G: " << (r.in_class_g ? "true" : "false") << "\n"
              << "counts: n=" << r.n << " b=" << r.b << " d=" << r.d
              << " e=" << r.e << " m=" << r.m << "\n";
  }
}

VerifyReport validate_surface(const SurfaceDecomposition& s) {
  VerifyReport rep;
  rep.add("genus >= 2", s.genus >= 2, "genus=" + std::to_string(s.genus));
  rep.add("piece count within genus",
          static_cast<long long>(s.mobius_pieces.size()) <= s.genus,
          std::to_string(s.mobius_pieces.size()) + " pieces, genus " +
              std::to_string(s.genus));
  GroupExpr bg = s.background_group ? s.background_group : unit();
  rep.add("background group in the wreath-closed class", is_in_class_G(bg),
          format_expr(bg));
  for (size_t i = 0; i < s.mobius_pieces.size(); ++i) {
    VerifyReport pr = validate_decomposition(s.mobius_pieces[i]);
    for (const auto& it : pr.items)
      rep.add("piece " + std::to_string(i) + ": " + it.name, it.ok, it.detail);
  }
  return rep;
}

bool is_surface_json(const std::string& text) {
  return json::parse(text).contains("mobius_pieces");
}

int cmd_pi1(const std::string& path, const Options& opt) {
  std::string text = read_input(path);
  if (is_surface_json(text)) {
    SurfaceDecomposition s = surface_from_json(text);
    VerifyReport rep = validate_surface(s);
    if (!rep.ok()) {
      print_report(rep, opt);
      return kExitFailed;
    }
    print_pi1(pi1_nonorientable(s), opt);
    return kExitOk;
  }
  MobiusDecomposition dec = decomposition_from_json(text);
  VerifyReport rep = validate_decomposition(dec);
  if (!rep.ok()) {
    print_report(rep, opt);
    return kExitFailed;
  }
  print_pi1(pi1_mobius(dec), opt);
  return kExitOk;
}

int cmd_validate(const std::string& path, const Options& opt) {
  std::string text = read_input(path);
  VerifyReport rep = is_surface_json(text)
                         ? validate_surface(surface_from_json(text))
                         : validate_decomposition(decomposition_from_json(text));
  print_report(rep, opt);
  return report_exit(rep);
}

ThetaOptions theta_options(const Options& opt) {
  ThetaOptions to;
  to.N = opt.depth;
  to.cap = Int(opt.cap);
  return to;
}

int cmd_verify_wreath(const std::string& g, long long m, const Options& opt) {
  VerifyReport rep = verify_theta_wreath(parse_expr(g), m, theta_options(opt));
  print_report(rep, opt);
  return report_exit(rep);
}

int cmd_verify_twisted(const std::string& g, const std::string& h,
                       const std::string& gamma, long long m,
                       const Options& opt) {
  VerifyReport rep =
      verify_theta_twisted(parse_expr(g), parse_expr(h),
                           involution_from_spec(gamma), m, theta_options(opt));
  print_report(rep, opt);
  return report_exit(rep);
}

// Subgroup spec "kZm": the multiples of k inside the cyclic group of
// order m (so "3Z12" is {0,3,6,9} in Z12).
std::pair<long long, long long> parse_cyclic_subgroup(const std::string& s) {
  static const std::regex form("^([0-9]+)Z([0-9]+)$");
  std::smatch match;
  if (!std::regex_match(s, match, form))
    throw std::invalid_argument("subgroup spec must look like 3Z12, got " + s);
  long long k = std::stoll(match[1]);
  long long m = std::stoll(match[2]);
  if (k <= 0 || m <= 0 || m % k != 0)
    throw std::invalid_argument("subgroup spec " + s +
                                ": the index must divide the modulus");
  return {k, m};
}

int cmd_verify_3x3(const std::string& bspec, const std::string& aspec,
                   const std::string& lspec, const Options& opt) {
  GroupExpr bexpr = parse_expr(bspec);
  ConcreteGroup b = ConcreteGroup::from_quotient(bexpr, 1, Int(opt.cap));
  auto subgroup = [&](const std::string& spec) {
    auto [k, m] = parse_cyclic_subgroup(spec);
    if (bexpr->kind != ExprKind::Cyclic || bexpr->m != m)
      throw std::invalid_argument("subgroup spec " + spec +
                                  " does not match the ambient group " +
                                  format_expr(bexpr));
    std::vector<size_t> idx;
    for (size_t i = 0; i < b.size(); ++i)
      if (b.element(i).value() % k == 0) idx.push_back(i);
    return idx;
  };
  ThreeByThree th = build_3x3(b, subgroup(aspec), subgroup(lspec));
  VerifyReport rep;
  for (const auto& seq : th.sequences)
    rep.add("sequence " + seq.name, seq.ok(),
            seq.ok() ? "" : "exactness failed");
  print_report(rep, opt);
  return report_exit(rep);
}

int cmd_verify_mul_oracle(long long samples, const Options& opt) {
  std::mt19937_64 rng(opt.seed);
  std::vector<GroupExpr> pool = {unit(), cyclic(2), cyclic(3)};
  long long symbolic = 0, quotient = 0;
  std::string witness;
  for (long long s = 0; s < samples && witness.empty(); ++s) {
    GroupExpr g = pool[rng() % pool.size()];
    GroupExpr h = pool[rng() % pool.size()];
    long long m = 1 + static_cast<long long>(rng() % 4);
    Involution gamma =
        (rng() % 2) ? Involution::inversion() : Involution::identity();
    GroupExpr tw = twisted_wr_z(g, h, gamma, m);
    Element u = sample_element(tw, rng);
    Element v = sample_element(tw, rng);
    if (mul(tw, u, v) != twisted_mul_oracle(tw, u, v)) {
      witness = "symbolic " + format_expr(tw) + " u=" + u.to_string() +
                " v=" + v.to_string();
      break;
    }
    ++symbolic;
    long long n = 1 + static_cast<long long>(rng() % 2);
    Element uq = quotient_sample(tw, n, rng);
    Element vq = quotient_sample(tw, n, rng);
    if (quotient_mul(tw, n, uq, vq) !=
        quotient_twisted_mul_oracle(tw, n, uq, vq)) {
      witness = "quotient N=" + std::to_string(n) + " " + format_expr(tw) +
                " u=" + uq.to_string() + " v=" + vq.to_string();
      break;
    }
    ++quotient;
  }
  VerifyReport rep;
  rep.add("closed form matches stepwise oracle",
          witness.empty(),
          witness.empty() ? std::to_string(symbolic) + " symbolic + " +
                                std::to_string(quotient) + " quotient samples"
                          : witness);
  print_report(rep, opt);
  return report_exit(rep);
}

HomogeneousPoly parse_poly_arg(const std::string& text) {
  return HomogeneousPoly::parse(text);
}

int cmd_poly_squarefree(const std::string& text, const Options& opt) {
  HomogeneousPoly g = parse_poly_arg(text);
  bool sf = is_squarefree(g);
  if (opt.format == "json") {
    json j;
    j["polynomial"] = g.to_string();
    j["squarefree"] = sf;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (sf ? "true" : "false") << "\n";
  }
  return kExitOk;
}

int cmd_poly_certificate(const std::string& var, const std::string& text,
                         const Options& opt) {
  if (var != "x" && var != "y")
    throw std::invalid_argument("variable must be x or y, got " + var);
  HomogeneousPoly g = parse_poly_arg(text);
  if (!is_squarefree(g)) {
    std::cerr << "not squarefree: " << g.to_string() << "\n";
    return kExitFailed;
  }
  JacobianCertificate cert = jacobian_certificate(g, var[0]);
  bool verified = cert.verify(g);
  if (opt.format == "json") {
    json j;
    j["polynomial"] = g.to_string();
    j["variable"] = var;
    j["m"] = cert.m;
    j["P"] = cert.P.to_string();
    j["Q"] = cert.Q.to_string();
    j["verified"] = verified;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "A*P + B*Q = " << var << "^" << cert.m << "\n"
              << "P = " << cert.P.to_string() << "\n"
              << "Q = " << cert.Q.to_string() << "\n"
              << "verified: " << (verified ? "true" : "false") << "\n";
  }
  return verified ? kExitOk : kExitFailed;
}

int cmd_poly_milnor(const std::string& text, const Options& opt) {
  HomogeneousPoly g = parse_poly_arg(text);
  if (!is_squarefree(g)) {
    std::cerr << "not squarefree (Milnor number is infinite): " << g.to_string()
              << "\n";
    return kExitFailed;
  }
  MilnorResult r = milnor_number(g);
  if (opt.format == "json") {
    json j;
    j["polynomial"] = g.to_string();
    j["mu"] = r.mu;
    j["cutoff"] = r.cutoff;
    j["mu_at_recheck"] = r.mu_at_recheck;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << r.mu << "\n";
  }
  return kExitOk;
}

void print_element(const Element& e, const Options& opt) {
  if (opt.format == "json") {
    json j;
    j["element"] = json::parse(e.to_string());
    std::cout << j.dump() << "\n";
  } else {
    std::cout << e.to_string() << "\n";
  }
}

int cmd_group_mul(const std::string& expr, const std::string& u,
                  const std::string& v, const Options& opt) {
  GroupExpr g = parse_expr(expr);
  print_element(mul(g, parse_element(u), parse_element(v)), opt);
  return kExitOk;
}

int cmd_group_inv(const std::string& expr, const std::string& u,
                  const Options& opt) {
  GroupExpr g = parse_expr(expr);
  print_element(inverse(g, parse_element(u)), opt);
  return kExitOk;
}

int cmd_group_order(const std::string& expr, const std::string& u,
                    const Options& opt) {
  GroupExpr g = parse_expr(expr);
  std::string result;
  if (!u.empty()) {
    OrderResult r = element_order(g, parse_element(u), opt.cap);
    switch (r.status) {
      case OrderResult::Status::Finite:
        result = r.order.str();
        break;
      case OrderResult::Status::Infinite:
        result = "infinite";
        break;
      case OrderResult::Status::ExceedsBound:
        result = "exceeds cap " + std::to_string(opt.cap);
        break;
    }
  } else if (quotientable(g)) {
    result = quotient_order(g, opt.depth).str();
  } else {
    result = "infinite";
  }
  if (opt.format == "json") {
    json j;
    j["order"] = result;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << result << "\n";
  }
  return kExitOk;
}

int cmd_group_quotient(const std::string& expr, const Options& opt) {
  GroupExpr g = parse_expr(expr);
  if (!quotientable(g))
    throw std::invalid_argument("no finite quotients: " + format_expr(g) +
                                " has a free Z leaf");
  auto rows = invariant_fingerprint(g, static_cast<int>(opt.depth), Int(opt.cap));
  if (opt.format == "json") {
    json j;
    j["expression"] = format_expr(g);
    json arr = json::array();
    for (const auto& row : rows) {
      json one;
      one["N"] = row.N;
      one["order"] = row.order.str();
      one["computed"] = row.computed;
      one["abelian_invariants"] = row.abelian_invariants;
      arr.push_back(std::move(one));
    }
    j["quotients"] = std::move(arr);
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& row : rows) {
      std::cout << "N=" << row.N << " order=" << row.order
                << (row.computed ? "" : " (table skipped, over cap)")
                << " abelian_invariants=[";
      for (size_t i = 0; i < row.abelian_invariants.size(); ++i)
        std::cout << (i ? "," : "") << row.abelian_invariants[i];
      std::cout << "]\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact computations for wreath-type groups, Mobius band "
      "decompositions, and homogeneous polynomial certificates"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "json", "latex"}))
      ->capture_default_str();
  app.add_option("--seed", opt.seed, "RNG seed for sampled checks")
      ->capture_default_str();
  app.add_option("--depth", opt.depth, "quotient multiplier / recursion depth")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--cap", opt.cap, "order cap for finite instantiations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string pi1_path;
  auto* pi1_cmd =
      app.add_subcommand("pi1", "orbit fundamental group of a decomposition");
  pi1_cmd->add_option("file", pi1_path, "decomposition JSON file (- for stdin)")
      ->required();
  pi1_cmd->fallthrough();

  std::string validate_path;
  auto* validate_cmd =
      app.add_subcommand("validate", "validate a decomposition file");
  validate_cmd
      ->add_option("file", validate_path, "decomposition JSON file (- for stdin)")
      ->required();
  validate_cmd->fallthrough();

  auto* verify_cmd =
      app.add_subcommand("verify", "run a structural verification suite");
  verify_cmd->require_subcommand(1);
  verify_cmd->fallthrough();

  std::string vw_g;
  long long vw_m = 2;
  auto* vw = verify_cmd->add_subcommand(
      "wreath", "characterization isomorphism for the plain wreath product");
  vw->add_option("--g", vw_g, "base group expression")->required();
  vw->add_option("--m", vw_m, "arity")->required()->check(CLI::PositiveNumber);
  vw->fallthrough();

  std::string vt_g, vt_h, vt_gamma = "id";
  long long vt_m = 1;
  auto* vt = verify_cmd->add_subcommand(
      "twisted", "characterization isomorphism for the twisted product");
  vt->set_help_flag("--help", "print help");  // frees -h / --h for the group
  vt->add_option("--g", vt_g, "first base group")->required();
  vt->add_option("--h", vt_h, "second base group")->required();
  vt->add_option("--gamma", vt_gamma, "involution spec (id, inv, perm[...])");
  vt->add_option("--m", vt_m, "arity")->required()->check(CLI::PositiveNumber);
  vt->fallthrough();

  std::string v3_b, v3_a, v3_l;
  auto* v3 = verify_cmd->add_subcommand(
      "3x3", "3x3 diagram of subgroups of a cyclic group");
  v3->add_option("--b", v3_b, "ambient group expression, e.g. Z12")->required();
  v3->add_option("--a", v3_a, "subgroup spec, e.g. 3Z12")->required();
  v3->add_option("--l", v3_l, "subgroup spec, e.g. 2Z12")->required();
  v3->fallthrough();

  long long vmo_samples = 1000;
  auto* vmo = verify_cmd->add_subcommand(
      "mul-oracle", "closed-form twisted product against the stepwise oracle");
  vmo->add_option("--samples", vmo_samples, "sample count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  vmo->fallthrough();

  auto* poly_cmd =
      app.add_subcommand("poly", "homogeneous polynomial computations");
  poly_cmd->require_subcommand(1);
  poly_cmd->fallthrough();

  std::string psf_poly;
  auto* psf = poly_cmd->add_subcommand("squarefree", "squarefreeness test");
  psf->add_option("polynomial", psf_poly, "homogeneous polynomial")->required();
  psf->fallthrough();

  std::string pc_var, pc_poly;
  auto* pc = poly_cmd->add_subcommand(
      "certificate", "Bezout certificate A*P + B*Q = var^m for the partials");
  pc->add_option("variable", pc_var, "x or y")->required();
  pc->add_option("polynomial", pc_poly, "homogeneous polynomial")->required();
  pc->fallthrough();

  std::string pm_poly;
  auto* pm = poly_cmd->add_subcommand("milnor", "Milnor number");
  pm->add_option("polynomial", pm_poly, "homogeneous polynomial")->required();
  pm->fallthrough();

  auto* group_cmd = app.add_subcommand("group", "element-level group arithmetic");
  group_cmd->require_subcommand(1);
  group_cmd->fallthrough();

  std::string gm_expr, gm_u, gm_v;
  auto* gm = group_cmd->add_subcommand("mul", "product of two elements");
  gm->add_option("--expr", gm_expr, "group expression")->required();
  gm->add_option("--u", gm_u, "left element, e.g. [[1,2,3],1]")->required();
  gm->add_option("--v", gm_v, "right element")->required();
  gm->fallthrough();

  std::string gi_expr, gi_u;
  auto* gi = group_cmd->add_subcommand("inv", "inverse of an element");
  gi->add_option("--expr", gi_expr, "group expression")->required();
  gi->add_option("--u", gi_u, "element")->required();
  gi->fallthrough();

  std::string go_expr, go_u;
  auto* go = group_cmd->add_subcommand(
      "order", "order of an element (--u) or of the finite quotient");
  go->add_option("--expr", go_expr, "group expression")->required();
  go->add_option("--u", go_u, "element (optional)");
  go->fallthrough();

  std::string gq_expr;
  auto* gq = group_cmd->add_subcommand(
      "quotient", "finite quotient orders and abelian invariants up to --depth");
  gq->add_option("--expr", gq_expr, "group expression")->required();
  gq->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (pi1_cmd->parsed()) return cmd_pi1(pi1_path, opt);
    if (validate_cmd->parsed()) return cmd_validate(validate_path, opt);
    if (vw->parsed()) return cmd_verify_wreath(vw_g, vw_m, opt);
    if (vt->parsed()) return cmd_verify_twisted(vt_g, vt_h, vt_gamma, vt_m, opt);
    if (v3->parsed()) return cmd_verify_3x3(v3_b, v3_a, v3_l, opt);
    if (vmo->parsed()) return cmd_verify_mul_oracle(vmo_samples, opt);
    if (psf->parsed()) return cmd_poly_squarefree(psf_poly, opt);
    if (pc->parsed()) return cmd_poly_certificate(pc_var, pc_poly, opt);
    if (pm->parsed()) return cmd_poly_milnor(pm_poly, opt);
    if (gm->parsed()) return cmd_group_mul(gm_expr, gm_u, gm_v, opt);
    if (gi->parsed()) return cmd_group_inv(gi_expr, gi_u, opt);
    if (go->parsed()) return cmd_group_order(go_expr, go_u, opt);
    if (gq->parsed()) return cmd_group_quotient(gq_expr, opt);
    std::cerr << "no subcommand\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
