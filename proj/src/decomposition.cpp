#include "morbit/decomposition.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace morbit {

std::pair<long long, int> apply_sigma(const MobiusDecomposition& d,
                                      long long disk, int sign) {
  if (disk < 1 || disk > d.n())
    throw std::out_of_range("disk index out of range");
  const SignedTarget& t = d.sigma[disk - 1];
  return {t.target, sign > 0 ? t.sign : -t.sign};
}

namespace {

bool sigma_is_permutation(const MobiusDecomposition& d, std::string& why) {
  long long n = d.n();
  if (static_cast<long long>(d.sigma.size()) != n) {
    why = "sigma has " + std::to_string(d.sigma.size()) + " rows for " +
          std::to_string(n) + " disks";
    return false;
  }
  std::vector<bool> hit(n, false);
  for (long long i = 0; i < n; ++i) {
    const SignedTarget& t = d.sigma[i];
    if (t.target < 1 || t.target > n) {
      why = "sigma(" + std::to_string(i + 1) + ") targets " +
            std::to_string(t.target);
      return false;
    }
    if (t.sign != 1 && t.sign != -1) {
      why = "sigma(" + std::to_string(i + 1) + ") has sign " +
            std::to_string(t.sign);
      return false;
    }
    if (hit[t.target - 1]) {
      why = "disk " + std::to_string(t.target) + " hit twice";
      return false;
    }
    hit[t.target - 1] = true;
  }
  return true;
}

// Walks the signed orbit of (disk, +1) and reports the first k in [1, b)
// with a fixed signed element, or 0 if the action is free up to b.
struct OrbitWalk {
  std::vector<long long> disks;  // distinct disks in visit order
  bool t2 = false;               // (rep, -1) reached from (rep, +1)
  long long fixed_at = 0;        // power fixing some signed element, 0 if none
  bool returns_identity = true;  // sigma^b restores (rep, +1)
};

OrbitWalk walk_orbit(const MobiusDecomposition& d, long long start) {
  OrbitWalk w;
  long long b = d.b();
  long long disk = start;
  int sign = 1;
  std::set<long long> seen;
  for (long long k = 1; k <= b; ++k) {
    if (seen.insert(disk).second) w.disks.push_back(disk);
    auto [nd, ns] = apply_sigma(d, disk, sign);
    disk = nd;
    sign = ns;
    if (disk == start && sign == -1) w.t2 = true;
    if (k < b && disk == start && sign == 1 && w.fixed_at == 0) w.fixed_at = k;
  }
  w.returns_identity = (disk == start && sign == 1);
  return w;
}

}  // namespace

VerifyReport validate_decomposition(const MobiusDecomposition& d) {
  VerifyReport rep;
  bool shape = d.a >= 1 && d.c >= 1;
  rep.add("positive a and c", shape,
          "a=" + std::to_string(d.a) + " c=" + std::to_string(d.c));
  bool divides = shape && d.c % d.a == 0;
  rep.add("a divides c", divides, divides
                                      ? "b=" + std::to_string(d.c / d.a)
                                      : "c=" + std::to_string(d.c) +
                                            " not a multiple of a=" +
                                            std::to_string(d.a));
  for (long long i = 0; i < d.n(); ++i)
    if (!d.disks[i].group) {
      rep.add("disk groups present", false,
              "disk " + std::to_string(i + 1) + " has no group");
      return rep;
    }
  std::string why;
  bool perm = sigma_is_permutation(d, why);
  rep.add("sigma is a signed permutation", perm, why);
  rep.add("star rule", true,
          "enforced by encoding: sigma(Y,-1) := (target, -sign)");
  if (!divides || !perm) return rep;

  long long b = d.b();
  long long n = d.n();

  // Freeness and sigma^b = id, checked on every signed element.
  bool free_ok = true, order_ok = true;
  std::string free_why, order_why;
  for (long long i = 1; i <= n; ++i) {
    for (int s : {1, -1}) {
      long long disk = i;
      int sign = s;
      for (long long k = 1; k < b; ++k) {
        auto [nd, ns] = apply_sigma(d, disk, sign);
        disk = nd;
        sign = ns;
        if (disk == i && sign == s && free_ok) {
          free_ok = false;
          free_why = "sigma^" + std::to_string(k) + " fixes (" +
                     std::to_string(i) + "," + (s > 0 ? "+" : "-") + ")";
        }
      }
      auto [nd, ns] = apply_sigma(d, disk, sign);
      if ((nd != i || ns != s) && order_ok) {
        order_ok = false;
        order_why = "sigma^" + std::to_string(b) + " moves (" +
                    std::to_string(i) + "," + (s > 0 ? "+" : "-") + ")";
      }
    }
  }
  rep.add("free action below order b", free_ok, free_why);
  rep.add("sigma^b is the identity", order_ok, order_why);
  if (!free_ok || !order_ok) return rep;

  // Orbit structure: type, constant groups, lengths.
  std::vector<bool> visited(n, false);
  long long t1 = 0, t2 = 0;
  bool groups_ok = true, lengths_ok = true;
  std::string groups_why, lengths_why;
  for (long long i = 1; i <= n; ++i) {
    if (visited[i - 1]) continue;
    OrbitWalk w = walk_orbit(d, i);
    for (long long disk : w.disks) visited[disk - 1] = true;
    (w.t2 ? t2 : t1) += 1;
    for (long long disk : w.disks)
      if (!equal(d.disks[disk - 1].group, d.disks[i - 1].group) && groups_ok) {
        groups_ok = false;
        groups_why = "disks " + std::to_string(i) + " and " +
                     std::to_string(disk) + " share an orbit but carry " +
                     format_expr(d.disks[i - 1].group) + " and " +
                     format_expr(d.disks[disk - 1].group);
      }
    long long expect = w.t2 ? b / 2 : b;
    if (static_cast<long long>(w.disks.size()) != expect && lengths_ok) {
      lengths_ok = false;
      lengths_why = "orbit of disk " + std::to_string(i) + " has " +
                    std::to_string(w.disks.size()) + " disks, expected " +
                    std::to_string(expect);
    }
  }
  rep.add("groups constant along orbits", groups_ok, groups_why);
  rep.add("orbit lengths b (T1) and b/2 (T2)", lengths_ok, lengths_why);

  // Counting and parity constraints.
  bool count_ok = 2 * n == b * (2 * t1 + t2);
  rep.add("n = b(d + e/2)", count_ok,
          "n=" + std::to_string(n) + " b=" + std::to_string(b) +
              " d=" + std::to_string(t1) + " e=" + std::to_string(t2));
  if (t2 == 0)
    rep.add("e = 0 forces odd b", b % 2 == 1, "b=" + std::to_string(b));
  else
    rep.add("e > 0 forces even b", b % 2 == 0,
            "b=" + std::to_string(b) + " with e=" + std::to_string(t2));
  return rep;
}

std::vector<OrbitRecord> classify_orbits(const MobiusDecomposition& d) {
  VerifyReport rep = validate_decomposition(d);
  if (!rep.ok())
    throw std::invalid_argument("invalid decomposition:\n" + rep.summary());
  std::vector<OrbitRecord> out;
  std::vector<bool> visited(d.n(), false);
  for (long long i = 1; i <= d.n(); ++i) {
    if (visited[i - 1]) continue;
    OrbitWalk w = walk_orbit(d, i);
    OrbitRecord r;
    r.type = w.t2 ? OrbitType::T2 : OrbitType::T1;
    r.representative = i;
    r.representative_group = d.disks[i - 1].group;
    r.representative_delta = d.disks[i - 1].delta;
    r.length = static_cast<long long>(w.disks.size());
    r.disk_indices = w.disks;
    std::sort(r.disk_indices.begin(), r.disk_indices.end());
    for (long long disk : w.disks) visited[disk - 1] = true;
    // T2 sanity: sigma^{b/2} flips the sign of every element of the orbit.
    if (r.type == OrbitType::T2) {
      long long m = d.b() / 2;
      for (long long disk : w.disks) {
        long long cur = disk;
        int sign = 1;
        for (long long k = 0; k < m; ++k) {
          auto [nd, ns] = apply_sigma(d, cur, sign);
          cur = nd;
          sign = ns;
        }
        if (cur != disk || sign != -1)
          throw std::logic_error(
              "T2 orbit of disk " + std::to_string(i) +
              ": sigma^(b/2) does not reverse disk " + std::to_string(disk));
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

long long eta_value(const MobiusDecomposition& d, long long shift) {
  if (d.a < 1) throw std::invalid_argument("a must be positive");
  if (shift % d.a != 0)
    throw std::invalid_argument("shift " + std::to_string(shift) +
                                " is not a multiple of a=" +
                                std::to_string(d.a));
  return shift / d.a;
}

MobiusDecomposition decomposition_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  MobiusDecomposition d;
  d.cylinder_group = parse_expr(j.at("cylinder_group").get<std::string>());
  d.a = j.at("a").get<long long>();
  d.c = j.at("c").get<long long>();
  for (const auto& disk : j.at("disks")) {
    DiskRecord r;
    r.group = parse_expr(disk.at("group").get<std::string>());
    if (disk.contains("delta"))
      r.delta = parse_expr(disk.at("delta").get<std::string>());
    d.disks.push_back(std::move(r));
  }
  for (const auto& row : j.at("sigma")) {
    if (!row.is_array() || row.size() != 2)
      throw std::invalid_argument("sigma rows must be [target, sign]");
    d.sigma.push_back({row[0].get<long long>(), row[1].get<int>()});
  }
  if (j.contains("gamma")) d.gamma = j.at("gamma").get<std::string>();
  return d;
}

std::string decomposition_to_json(const MobiusDecomposition& d) {
  nlohmann::json j;
  j["cylinder_group"] = format_expr(d.cylinder_group);
  j["a"] = d.a;
  j["c"] = d.c;
  j["disks"] = nlohmann::json::array();
  for (const auto& disk : d.disks) {
    nlohmann::json r;
    r["group"] = format_expr(disk.group);
    if (disk.delta) r["delta"] = format_expr(disk.delta);
    j["disks"].push_back(std::move(r));
  }
  j["sigma"] = nlohmann::json::array();
  for (const auto& t : d.sigma)
    j["sigma"].push_back(nlohmann::json::array({t.target, t.sign}));
  if (d.gamma != "id") j["gamma"] = d.gamma;
  return j.dump(2);
}

MobiusDecomposition random_decomposition(
    std::mt19937_64& rng, const RandomDecompositionOptions& o) {
  auto pick = [&](long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
  };
  std::vector<GroupExpr> pool = {
      unit(), int_line(), cyclic(2),
      direct({int_line(), int_line()}), wr_z(int_line(), 2)};

  MobiusDecomposition d;
  bool with_t2 = pick(0, 1) == 1 && o.max_e >= 1;
  long long nd, ne, b;
  if (with_t2) {
    ne = pick(1, o.max_e);
    nd = pick(0, o.max_d);
    long long half = std::max<long long>(1, o.max_b / 2);
    b = 2 * pick(1, half);
  } else {
    ne = 0;
    nd = pick(1, o.max_d);
    b = 2 * pick(0, (o.max_b - 1) / 2) + 1;
  }
  if (o.cw_compatible)
    d.a = ne > 0 ? nd + ne : nd + 1 + pick(0, 1);
  else
    d.a = nd + ne + pick(0, 2) + (ne == 0 ? 1 : 0);
  d.c = d.a * b;
  d.cylinder_group = pool[pick(0, pool.size() - 1)];

  long long m = b / 2;
  long long n = b * nd + m * ne;
  d.disks.resize(n);
  d.sigma.resize(n);

  // Lay disks out orbit-major, then build sigma as the shift along each
  // orbit with optional random signs (cycle sign product +1 for T1, -1 for
  // T2, which pins the orbit type).
  long long base = 0;
  auto lay_orbit = [&](long long len, int cycle_product) {
    GroupExpr g = pool[pick(0, pool.size() - 1)];
    std::vector<int> signs(len, 1);
    if (o.random_signs)
      for (auto& s : signs) s = pick(0, 1) ? 1 : -1;
    int prod = 1;
    for (int s : signs) prod *= s;
    if (prod != cycle_product) signs[pick(0, len - 1)] *= -1;
    for (long long v = 0; v < len; ++v) {
      d.disks[base + v].group = g;
      if (o.with_delta) d.disks[base + v].delta = unit();
      d.sigma[base + v] = {base + (v + 1) % len + 1, signs[v]};
    }
    base += len;
  };
  for (long long t = 0; t < nd; ++t) lay_orbit(b, 1);
  for (long long s = 0; s < ne; ++s) lay_orbit(m, -1);

  if (o.shuffle_disks && n > 1) {
    std::vector<long long> relabel(n);
    for (long long i = 0; i < n; ++i) relabel[i] = i;
    std::shuffle(relabel.begin(), relabel.end(), rng);
    MobiusDecomposition sh = d;
    for (long long i = 0; i < n; ++i) {
      sh.disks[relabel[i]] = d.disks[i];
      sh.sigma[relabel[i]] = {relabel[d.sigma[i].target - 1] + 1,
                              d.sigma[i].sign};
    }
    d = std::move(sh);
  }
  return d;
}

}  // namespace morbit
