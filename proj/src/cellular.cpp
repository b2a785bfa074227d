#include "morbit/cellular.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace morbit {

CwAutomorphism identity_automorphism(std::shared_ptr<const CwComplex> cx) {
  CwAutomorphism w;
  w.complex = std::move(cx);
  w.p0.resize(w.complex->c0);
  std::iota(w.p0.begin(), w.p0.end(), 0);
  w.p1.target.resize(w.complex->c1);
  std::iota(w.p1.target.begin(), w.p1.target.end(), 0);
  w.p1.sign.assign(w.complex->c1, 1);
  w.p2.target.resize(w.complex->c2);
  std::iota(w.p2.target.begin(), w.p2.target.end(), 0);
  w.p2.sign.assign(w.complex->c2, 1);
  return w;
}

CwAutomorphism compose(const CwAutomorphism& x, const CwAutomorphism& y) {
  if (x.complex.get() != y.complex.get())
    throw std::invalid_argument("composing automorphisms of different complexes");
  CwAutomorphism w;
  w.complex = x.complex;
  w.p0.resize(y.p0.size());
  for (size_t i = 0; i < y.p0.size(); ++i) w.p0[i] = x.p0[y.p0[i]];
  auto comp = [](const SignedPerm& a, const SignedPerm& b) {
    SignedPerm r;
    r.target.resize(b.target.size());
    r.sign.resize(b.target.size());
    for (size_t i = 0; i < b.target.size(); ++i) {
      r.target[i] = a.target[b.target[i]];
      r.sign[i] = a.sign[b.target[i]] * b.sign[i];
    }
    return r;
  };
  w.p1 = comp(x.p1, y.p1);
  w.p2 = comp(x.p2, y.p2);
  return w;
}

CwAutomorphism power(const CwAutomorphism& x, long long k) {
  if (k < 0) throw std::invalid_argument("negative power");
  CwAutomorphism r = identity_automorphism(x.complex);
  for (long long i = 0; i < k; ++i) r = compose(x, r);
  return r;
}

namespace {

bool is_bijection(const std::vector<size_t>& t, size_t n) {
  if (t.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (size_t v : t) {
    if (v >= n || hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

// Is b some cyclic rotation of a?
bool is_rotation(const std::vector<size_t>& a, const std::vector<size_t>& b) {
  if (a.size() != b.size()) return false;
  size_t n = a.size();
  if (n == 0) return true;
  for (size_t off = 0; off < n; ++off) {
    bool match = true;
    for (size_t i = 0; i < n && match; ++i)
      match = a[i] == b[(i + off) % n];
    if (match) return true;
  }
  return false;
}

}  // namespace

CellularityReport check_cellular(const CwAutomorphism& w) {
  CellularityReport r;
  const CwComplex& cx = *w.complex;
  auto fail = [&](std::string why) {
    r.ok = false;
    r.why = std::move(why);
    return r;
  };
  if (!is_bijection(w.p0, cx.c0)) return fail("vertex map is not a bijection");
  if (!is_bijection(w.p1.target, cx.c1) || w.p1.sign.size() != cx.c1)
    return fail("edge map is not a signed bijection");
  if (!is_bijection(w.p2.target, cx.c2) || w.p2.sign.size() != cx.c2)
    return fail("face map is not a signed bijection");
  for (int s : w.p1.sign)
    if (s != 1 && s != -1) return fail("edge sign out of range");
  for (int s : w.p2.sign)
    if (s != 1 && s != -1) return fail("face sign out of range");

  for (size_t e = 0; e < cx.c1; ++e) {
    auto [tail, head] = cx.edge_ends[e];
    auto [itail, ihead] = cx.edge_ends[w.p1.target[e]];
    size_t mt = w.p0[tail], mh = w.p0[head];
    bool match = w.p1.sign[e] > 0 ? (mt == itail && mh == ihead)
                                  : (mt == ihead && mh == itail);
    if (!match)
      return fail("edge " + std::to_string(e) +
                  " endpoints do not match its image");
  }
  for (size_t f = 0; f < cx.c2; ++f) {
    const auto& cycle = cx.faces[f];
    const auto& image_cycle = cx.faces[w.p2.target[f]];
    std::vector<size_t> mapped(cycle.size());
    for (size_t i = 0; i < cycle.size(); ++i) mapped[i] = w.p1.target[cycle[i]];
    std::vector<size_t> expect = image_cycle;
    if (w.p2.sign[f] < 0) std::reverse(expect.begin(), expect.end());
    if (!is_rotation(expect, mapped)) {
      // Cycles of length <= 2 coincide with their reversals, so retry the
      // other orientation before failing.
      std::reverse(expect.begin(), expect.end());
      if (!is_rotation(expect, mapped) || cycle.size() > 2)
        return fail("face " + std::to_string(f) +
                    " boundary does not map to its image boundary");
    }
  }
  return r;
}

LefschetzReport lefschetz_check(const CwAutomorphism& w) {
  CellularityReport cell = check_cellular(w);
  if (!cell.ok) throw std::invalid_argument("non-cellular input: " + cell.why);
  const CwComplex& cx = *w.complex;
  if (cx.euler() != 1)
    throw std::invalid_argument("Euler characteristic is " +
                                std::to_string(cx.euler()) + ", expected 1");
  LefschetzReport r;
  for (size_t v = 0; v < cx.c0; ++v)
    if (w.p0[v] == v) r.c0p++;
  for (size_t e = 0; e < cx.c1; ++e)
    if (w.p1.target[e] == e) (w.p1.sign[e] > 0 ? r.c1p : r.c1m)++;
  for (size_t f = 0; f < cx.c2; ++f)
    if (w.p2.target[f] == f) (w.p2.sign[f] > 0 ? r.c2p : r.c2m)++;
  r.lefschetz = r.c0p - (r.c1p - r.c1m) + (r.c2p - r.c2m);
  r.ok = r.lefschetz == 1;
  return r;
}

SphereLiftReport sphere_lift_check(const CwAutomorphism& w) {
  LefschetzReport base = lefschetz_check(w);
  SphereLiftReport r;
  r.c1p_lift = 2 * base.c1p;
  r.c2p_lift = 2 * base.c2p;
  // L of the orientation-preserving lift is 2 and its minus-counts vanish,
  // which forces the fixed vertex count of the lift.
  r.c0p_lift = 2 + 2 * base.c1p - 2 * base.c2p;
  r.ok = true;
  if (r.c0p_lift < 0 || r.c0p_lift > 2 * base.c0p) {
    r.ok = false;
    r.why = "derived lift vertex count " + std::to_string(r.c0p_lift) +
            " outside [0, " + std::to_string(2 * base.c0p) + "]";
  } else if (r.c0p_lift % 2 != 0) {
    r.ok = false;
    r.why = "derived lift vertex count is odd";
  }
  return r;
}

KerSActReport ker_s_act_probe(const CwAutomorphism& w) {
  CellularityReport cell = check_cellular(w);
  if (!cell.ok) throw std::invalid_argument("non-cellular input: " + cell.why);
  const CwComplex& cx = *w.complex;
  KerSActReport r;
  r.names = {"every disk cell preserved with orientation",
             "every 2-cell preserved with orientation",
             "at least two 2-cells preserved with orientation",
             "every cell preserved with orientation",
             "every edge preserved with orientation",
             "every cylinder boundary edge preserved with orientation",
             "at least one edge preserved with orientation"};

  long long c0p = 0, c1p = 0, c2p = 0;
  bool edges_minus = false, faces_minus = false;
  for (size_t v = 0; v < cx.c0; ++v)
    if (w.p0[v] == v) c0p++;
  for (size_t e = 0; e < cx.c1; ++e)
    if (w.p1.target[e] == e) {
      if (w.p1.sign[e] > 0)
        c1p++;
      else
        edges_minus = true;
    }
  for (size_t f = 0; f < cx.c2; ++f)
    if (w.p2.target[f] == f) {
      if (w.p2.sign[f] > 0)
        c2p++;
      else
        faces_minus = true;
    }

  bool disks_plus = true;
  for (size_t f = 0; f < cx.c2; ++f) {
    if (f == cx.c0_cell) continue;
    if (w.p2.target[f] != f || w.p2.sign[f] < 0) disks_plus = false;
  }
  bool q0_plus = true;
  for (size_t e : cx.q0_edges)
    if (w.p1.target[e] != e || w.p1.sign[e] < 0) q0_plus = false;

  r.conditions[0] = disks_plus;
  r.conditions[1] = c2p == static_cast<long long>(cx.c2) && !faces_minus;
  r.conditions[2] = c2p >= 2;
  r.conditions[3] = c0p == static_cast<long long>(cx.c0) &&
                    c1p == static_cast<long long>(cx.c1) && !edges_minus &&
                    r.conditions[1];
  r.conditions[4] = c1p == static_cast<long long>(cx.c1) && !edges_minus;
  r.conditions[5] = q0_plus;
  r.conditions[6] = c1p > 0;

  bool all = true, any = false;
  for (bool c : r.conditions) {
    all = all && c;
    any = any || c;
  }
  r.agree = all || !any;
  r.all_true = all;
  return r;
}

CwAutomorphism decomposition_to_cw(const MobiusDecomposition& dec) {
  std::vector<OrbitRecord> orbits = classify_orbits(dec);  // validates
  long long d = 0, e = 0;
  for (const auto& o : orbits) (o.type == OrbitType::T1 ? d : e)++;
  long long a = dec.a, b = dec.b(), c = dec.c, m = b / 2;
  if (d + e < 1)
    throw std::invalid_argument("CW synthesis needs at least one disk orbit");
  if (e > 0 && a != d + e)
    throw std::invalid_argument(
        "CW synthesis with T2 orbits needs a = d+e, got a=" +
        std::to_string(a) + " d=" + std::to_string(d) +
        " e=" + std::to_string(e));
  if (e == 0 && a < d + 1)
    throw std::invalid_argument(
        "CW synthesis needs a >= d+1 free boundary room, got a=" +
        std::to_string(a) + " d=" + std::to_string(d));

  // Edges 0..c-1 around the cylinder cell; edge u + a*v sits in column u of
  // block v.  Columns 0..d-1 carry one-edge disks (one per block), columns
  // d..d+e-1 carry two-edge disks spanning blocks half a turn apart.
  auto cx = std::make_shared<CwComplex>();
  cx->c1 = static_cast<size_t>(c);
  cx->faces.emplace_back();
  for (long long i = 0; i < c; ++i) cx->faces[0].push_back(i);
  cx->q0_edges = cx->faces[0];
  cx->c0_cell = 0;
  for (long long t = 0; t < d; ++t)
    for (long long v = 0; v < b; ++v)
      cx->faces.push_back({static_cast<size_t>(t + a * v)});
  for (long long s = 0; s < e; ++s)
    for (long long w = 0; w < m; ++w)
      cx->faces.push_back({static_cast<size_t>(d + s + a * w),
                           static_cast<size_t>(d + s + a * (w + m))});
  cx->c2 = cx->faces.size();

  // Vertices: slot i sits between edges i-1 and i; disk boundaries glue
  // slots together.  One-edge disks close a loop (slot x ~ slot x+1);
  // two-edge disks run the arcs in opposite senses (slot x1 ~ slot x2 and
  // slot x1+1 ~ slot x2+1).
  std::vector<size_t> parent(c);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<size_t(size_t)> find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](size_t x, size_t y) { parent[find(x)] = find(y); };
  for (size_t f = 1; f < cx->c2; ++f) {
    const auto& cycle = cx->faces[f];
    if (cycle.size() == 1) {
      unite(cycle[0], (cycle[0] + 1) % c);
    } else {
      unite(cycle[0], cycle[1]);
      unite((cycle[0] + 1) % c, (cycle[1] + 1) % c);
    }
  }
  std::vector<long long> vertex_of(c, -1);
  size_t nv = 0;
  for (long long i = 0; i < c; ++i)
    if (find(i) == static_cast<size_t>(i)) vertex_of[i] = nv++;
  for (long long i = 0; i < c; ++i) vertex_of[i] = vertex_of[find(i)];
  cx->c0 = nv;
  cx->edge_ends.resize(c);
  for (long long i = 0; i < c; ++i)
    cx->edge_ends[i] = {static_cast<size_t>(vertex_of[i]),
                        static_cast<size_t>(vertex_of[(i + 1) % c])};
  if (cx->euler() != 1)
    throw std::logic_error("column model Euler characteristic came out " +
                           std::to_string(cx->euler()));

  CwAutomorphism g;
  g.complex = cx;
  g.p0.resize(nv);
  for (long long i = 0; i < c; ++i) {
    size_t from = vertex_of[i], to = vertex_of[(i + a) % c];
    g.p0[from] = to;  // consistent because gluing is shift-equivariant
  }
  for (long long i = 0; i < c; ++i)
    if (g.p0[vertex_of[i]] != static_cast<size_t>(vertex_of[(i + a) % c]))
      throw std::logic_error("vertex identifications are not shift-equivariant");
  g.p1.target.resize(c);
  g.p1.sign.assign(c, 1);
  for (long long i = 0; i < c; ++i) g.p1.target[i] = (i + a) % c;
  g.p2.target.resize(cx->c2);
  g.p2.sign.assign(cx->c2, 1);
  g.p2.target[0] = 0;
  auto t1_face = [&](long long t, long long v) { return 1 + t * b + v; };
  auto t2_face = [&](long long s, long long w) { return 1 + d * b + s * m + w; };
  for (long long t = 0; t < d; ++t)
    for (long long v = 0; v < b; ++v)
      g.p2.target[t1_face(t, v)] = t1_face(t, (v + 1) % b);
  for (long long s = 0; s < e; ++s)
    for (long long w = 0; w < m; ++w) {
      g.p2.target[t2_face(s, w)] = t2_face(s, (w + 1) % m);
      // the half-turn return map reflects the two-edge disk
      if (w == m - 1) g.p2.sign[t2_face(s, w)] = -1;
    }

  CellularityReport cell = check_cellular(g);
  if (!cell.ok)
    throw std::logic_error("column model generator is not cellular: " +
                           cell.why);
  return g;
}

}  // namespace morbit
