#include "morbit/pi1.hpp"

#include <json.hpp>

#include <set>
#include <sstream>
#include <stdexcept>

#include "morbit/concrete_group.hpp"
#include "morbit/group_ops.hpp"

namespace morbit {

namespace {

using nlohmann::json;

GroupExpr or_unit(const GroupExpr& g) { return g ? g : unit(); }

}  // namespace

Involution involution_from_spec(const std::string& spec) {
  if (spec.empty() || spec == "id") return Involution::identity();
  if (spec == "inv") return Involution::inversion();
  if (spec.rfind("perm[", 0) == 0 && spec.back() == ']') {
    std::vector<int> perm;
    std::istringstream in(spec.substr(5, spec.size() - 6));
    std::string tok;
    while (std::getline(in, tok, ','))
      perm.push_back(std::stoi(tok) - 1);  // spec is 1-based
    return Involution::factor_perm(std::move(perm));
  }
  throw std::invalid_argument("unrecognized involution spec: " + spec);
}

Pi1Result pi1_mobius(const MobiusDecomposition& dec) {
  auto orbits = classify_orbits(dec);  // validates the decomposition

  std::vector<GroupExpr> t1, t2;
  for (const auto& o : orbits)
    (o.type == OrbitType::T1 ? t1 : t2).push_back(o.representative_group);

  Pi1Result r;
  r.n = dec.n();
  r.b = dec.b();
  r.d = static_cast<long long>(t1.size());
  r.e = static_cast<long long>(t2.size());

  GroupExpr a = or_unit(dec.cylinder_group);
  GroupExpr g = make_direct(t1);
  if (t2.empty()) {
    r.case_tag = "A";
    r.expression = normalize(make_direct({a, wr_z(g, r.b)}));
  } else {
    r.case_tag = t1.empty() ? "B" : "C";
    r.m = r.b / 2;
    GroupExpr h = make_direct(t2);
    r.expression = normalize(make_direct(
        {a, twisted_wr_z(g, h, involution_from_spec(dec.gamma), r.m)}));
  }
  r.in_class_g = is_in_class_G(r.expression);
  return r;
}

Pi1Result pi1_nonorientable(const SurfaceDecomposition& s) {
  if (s.genus < 2)
    throw std::invalid_argument("non-orientable genus must be >= 2");
  if (static_cast<long long>(s.mobius_pieces.size()) > s.genus)
    throw std::invalid_argument(
        "a genus " + std::to_string(s.genus) + " surface admits at most " +
        std::to_string(s.genus) + " disjoint Mobius pieces, got " +
        std::to_string(s.mobius_pieces.size()));
  GroupExpr background = or_unit(s.background_group);
  if (!is_in_class_G(background))
    throw std::invalid_argument(
        "background group must lie in the wreath-closed class: " +
        format_expr(background));

  Pi1Result r;
  r.case_tag = "aggregate";
  std::vector<GroupExpr> factors{background};
  for (const auto& piece : s.mobius_pieces) {
    Pi1Result p = pi1_mobius(piece);
    factors.push_back(p.expression);
    r.n += p.n;
    r.d += p.d;
    r.e += p.e;
  }
  r.expression = normalize(make_direct(std::move(factors)));
  r.in_class_g = is_in_class_G(r.expression);
  return r;
}

SurfaceDecomposition surface_from_json(const std::string& text) {
  json j = json::parse(text);
  SurfaceDecomposition s;
  if (!j.contains("genus")) throw std::invalid_argument("missing genus");
  s.genus = j.at("genus").get<long long>();
  if (j.contains("background_group"))
    s.background_group = parse_expr(j.at("background_group").get<std::string>());
  else
    s.background_group = unit();
  for (const auto& piece : j.value("mobius_pieces", json::array()))
    s.mobius_pieces.push_back(decomposition_from_json(piece.dump()));
  return s;
}

std::string surface_to_json(const SurfaceDecomposition& s) {
  json j;
  j["genus"] = s.genus;
  j["background_group"] = format_expr(or_unit(s.background_group));
  json pieces = json::array();
  for (const auto& piece : s.mobius_pieces)
    pieces.push_back(json::parse(decomposition_to_json(piece)));
  j["mobius_pieces"] = std::move(pieces);
  return j.dump(2);
}

// --- stabilizer diagram ------------------------------------------------------

namespace {

// Display helpers for the symbolic nodes.

std::string paren_pow(const std::string& s, long long k) {
  if (s == "1") return "1";
  if (k == 1) return s;
  return "(" + s + ")^" + std::to_string(k);
}

std::string pow_str(const GroupExpr& x, long long k) {
  return paren_pow(format_expr(x), k);
}

std::string quot_str(const GroupExpr& g, const GroupExpr& p) {
  if (p->kind == ExprKind::Unit) return format_expr(g);
  if (equal(g, p)) return "1";
  return format_expr(g) + "/" + format_expr(p);
}

// Joins tuple-part factor strings, dropping trivial ones, and appends the
// shift part ("0" for the kernel rows, pZ for the full stabilizer row).
std::string node_str(std::vector<std::string> parts, const std::string& shift) {
  std::string out;
  for (auto& p : parts) {
    if (p == "1") continue;
    if (!out.empty()) out += " x ";
    out += p;
  }
  if (out.empty()) return shift;
  return out + " x " + shift;
}

std::string period_str(long long p) {
  return p == 1 ? "Z" : std::to_string(p) + "Z";
}

// Canonical inclusion of a declared subgroup expression into its parent:
// identical expressions embed as the identity, Unit embeds as the identity
// element, Cyclic(k) into Cyclic(l) with k | l by multiplication with l/k,
// and direct products embed factorwise.
Element embed_element(const Element& d, const GroupExpr& sub,
                      const GroupExpr& big) {
  if (sub->kind == ExprKind::Unit) return identity_element(big);
  if (equal(sub, big)) return d;
  if (sub->kind == ExprKind::Cyclic && big->kind == ExprKind::Cyclic &&
      big->m % sub->m == 0)
    return Element(d.value() * (big->m / sub->m));
  if (sub->kind == ExprKind::Direct && big->kind == ExprKind::Direct &&
      sub->children.size() == big->children.size()) {
    std::vector<Element> out;
    out.reserve(sub->children.size());
    for (size_t i = 0; i < sub->children.size(); ++i)
      out.push_back(
          embed_element(d.at(i), sub->children[i], big->children[i]));
    return Element(std::move(out));
  }
  throw std::invalid_argument("no declared inclusion from " +
                              format_expr(sub) + " into " + format_expr(big));
}

// All elements of `sub`, embedded into `big` and rendered to their
// canonical strings for fast membership tests.
std::set<std::string> embedded_set(const GroupExpr& sub, const GroupExpr& big,
                                   const Int& cap) {
  std::set<std::string> out;
  for (const auto& d : quotient_elements(sub, 1, cap))
    out.insert(embed_element(d, sub, big).to_string());
  return out;
}

bool tuple_in(const Element& tuple, const std::set<std::string>& allowed) {
  for (const auto& c : tuple.items())
    if (!allowed.count(c.to_string())) return false;
  return true;
}

Int int_pow(const Int& base, long long k) {
  Int r = 1;
  for (long long i = 0; i < k; ++i) r *= base;
  return r;
}

}  // namespace

BieberbachDiagram bieberbach_diagram(const MobiusDecomposition& dec,
                                     const Int& cap) {
  auto orbits = classify_orbits(dec);

  // Every disk needs its distinguished subgroup, constant along orbits.
  for (const auto& o : orbits) {
    if (!o.representative_delta)
      throw std::invalid_argument(
          "disk " + std::to_string(o.representative) +
          " carries no distinguished subgroup (delta)");
    for (long long i : o.disk_indices) {  // 1-based
      const auto& delta = dec.disks[static_cast<size_t>(i - 1)].delta;
      if (!delta || !equal(delta, o.representative_delta))
        throw std::invalid_argument(
            "distinguished subgroups differ along the orbit of disk " +
            std::to_string(o.representative));
    }
  }

  std::vector<GroupExpr> t1g, t1d, t2g, t2d;
  for (const auto& o : orbits) {
    if (o.type == OrbitType::T1) {
      t1g.push_back(o.representative_group);
      t1d.push_back(o.representative_delta);
    } else {
      t2g.push_back(o.representative_group);
      t2d.push_back(o.representative_delta);
    }
  }

  const long long b = dec.b();
  GroupExpr g = make_direct(t1g);
  GroupExpr p = make_direct(t1d);
  GroupExpr h = make_direct(t2g);
  GroupExpr q = make_direct(t2d);

  BieberbachDiagram out;
  GroupExpr full;       // the middle node as an expression
  long long period;     // shift period p in row 2
  long long g_width;    // coordinate width of the G-side tuple

  if (t2g.empty()) {
    out.case_tag = "A";
    full = wr_z(g, b);
    period = b;
    g_width = b;
    out.nodes[0] = node_str({pow_str(p, b)}, "0");
    out.nodes[1] = node_str({pow_str(g, b)}, "0");
    out.nodes[2] = node_str({paren_pow(quot_str(g, p), b)}, "0");
    out.nodes[3] = node_str({pow_str(p, b)}, period_str(b));
    out.nodes[4] = format_expr(full);
    out.nodes[5] = "WrM(" + quot_str(g, p) + ", " + std::to_string(b) + ")";
  } else {
    out.case_tag = t1g.empty() ? "B" : "C";
    const long long m = b / 2;
    full = twisted_wr_z(g, h, involution_from_spec(dec.gamma), m);
    period = 2 * m;
    g_width = 2 * m;
    out.nodes[0] = node_str({pow_str(p, 2 * m), pow_str(q, m)}, "0");
    out.nodes[1] = node_str({pow_str(g, 2 * m), pow_str(h, m)}, "0");
    out.nodes[2] = node_str(
        {paren_pow(quot_str(g, p), 2 * m), paren_pow(quot_str(h, q), m)}, "0");
    out.nodes[3] =
        node_str({pow_str(p, 2 * m), pow_str(q, m)}, period_str(period));
    out.nodes[4] = format_expr(full);
    out.nodes[5] = "TwWrM(" + quot_str(g, p) + ", " + quot_str(h, q) + ", " +
                   dec.gamma + ", " + std::to_string(m) + ")";
  }
  out.nodes[6] = period_str(period);
  out.nodes[7] = "Z";
  out.nodes[8] = period == 1 ? "1" : "Z" + std::to_string(period);

  // Concrete pass: instantiate the finite quotient at N = 2 and verify all
  // six short sequences of the diagram on actual multiplication tables.
  const long long N = 2;
  bool can = quotientable(full) && quotientable(p) &&
             (t2g.empty() || quotientable(q));
  if (can && quotient_order(full, N) > cap) can = false;
  if (!can) return out;

  try {
    ConcreteGroup bc = ConcreteGroup::from_quotient(full, N, cap);
    std::set<std::string> pset = embedded_set(p, g, cap);
    std::set<std::string> qset;
    if (!t2g.empty()) qset = embedded_set(q, h, cap);

    std::vector<size_t> aset, lset;
    for (size_t i = 0; i < bc.size(); ++i) {
      const Element& el = bc.element(i);
      const Int shift = el.at(el.size() - 1).value();
      if (shift == 0) lset.push_back(i);
      bool in_a = shift % period == 0 && tuple_in(el.at(0), pset);
      if (in_a && !t2g.empty()) in_a = tuple_in(el.at(1), qset);
      if (in_a) aset.push_back(i);
    }

    Int p_ord = quotient_order(p, 1);
    Int k_expected = int_pow(p_ord, g_width);
    if (!t2g.empty()) k_expected *= int_pow(quotient_order(q, 1), b / 2);
    out.report.add("delta tuple count",
                   Int(aset.size()) == k_expected * N,
                   "got " + std::to_string(aset.size()));
    out.report.add("kernel row size",
                   Int(lset.size()) * period * N == Int(bc.size()),
                   "got " + std::to_string(lset.size()));

    ThreeByThree th = build_3x3(bc, aset, lset);
    for (const auto& seq : th.sequences)
      out.report.add("sequence " + seq.name, seq.ok(),
                     seq.ok() ? "" : "exactness failed");
    out.concrete_checked = true;
  } catch (const std::exception& ex) {
    out.report.add("concrete instantiation", false, ex.what());
    out.concrete_checked = true;
  }
  return out;
}

}  // namespace morbit
