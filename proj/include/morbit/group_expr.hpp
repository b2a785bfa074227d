#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "morbit/element.hpp"

namespace morbit {

/// Group expression constructors:
///   Unit          trivial group, written 1
///   IntLine       the integers Z
///   Cyclic        Z_m
///   Direct        direct product A x B x ...
///   WrZ           G^m  x| Z   with Z cyclically shifting the m coordinates
///   WrZm          G^m  x| Z_m
///   WrZZ          G^(m*n) x| Z^2 (row/column shifts of an m*n matrix)
///   WrZZmn        G^(m*n) x| (Z_m x Z_n)
///   TwistedWrZ    (G^2m x H^m) x| Z, shift twisted on H by an involution
///   TwistedWrZm   (G^2m x H^m) x| Z_2m
enum class ExprKind {
  Unit,
  IntLine,
  Cyclic,
  Direct,
  WrZ,
  WrZm,
  WrZZ,
  WrZZmn,
  TwistedWrZ,
  TwistedWrZm,
};

struct GroupExprNode;
using GroupExpr = std::shared_ptr<const GroupExprNode>;

/// Involutive automorphism used as the twist of TwistedWrZ/TwistedWrZm.
struct Involution {
  enum class Kind { Identity, FactorPerm, Inversion, Table };

  Kind kind = Kind::Identity;
  /// FactorPerm: 0-based images of the Direct factors of the domain, plus
  /// optional per-factor involutions (empty means identities).
  std::vector<int> perm;
  std::vector<Involution> inner;
  /// Table: explicit element-level involution, kept sorted by first entry.
  std::vector<std::pair<Element, Element>> table;
  std::string label;

  static Involution identity() { return {}; }
  static Involution factor_perm(std::vector<int> p,
                                std::vector<Involution> inner = {});
  static Involution inversion();
  static Involution table_map(std::vector<std::pair<Element, Element>> pairs,
                              std::string label = "table");
};

int compare(const Involution& a, const Involution& b);

struct GroupExprNode {
  ExprKind kind = ExprKind::Unit;
  long long m = 0;
  long long n = 0;
  /// Direct: the factors (always >= 2).  Wreath kinds: [base].
  /// Twisted kinds: [base, h].
  std::vector<GroupExpr> children;
  Involution gamma;
};

GroupExpr unit();
GroupExpr int_line();
GroupExpr cyclic(long long m);
/// Strict direct product; requires >= 2 factors.
GroupExpr direct(std::vector<GroupExpr> factors);
/// Direct product that collapses 0 factors to Unit and 1 factor to itself.
GroupExpr make_direct(std::vector<GroupExpr> factors);
GroupExpr wr_z(GroupExpr base, long long m);
GroupExpr wr_zm(GroupExpr base, long long m);
GroupExpr wr_zz(GroupExpr base, long long m, long long n);
GroupExpr wr_zzmn(GroupExpr base, long long m, long long n);
GroupExpr twisted_wr_z(GroupExpr base, GroupExpr h, Involution gamma,
                       long long m);
GroupExpr twisted_wr_zm(GroupExpr base, GroupExpr h, Involution gamma,
                        long long m);

/// Structural total order (also the sort key used by normalize).
int compare(const GroupExpr& a, const GroupExpr& b);
bool equal(const GroupExpr& a, const GroupExpr& b);

enum class ExprStyle { Plain, Latex };

std::string format_expr(const GroupExpr& e, ExprStyle style = ExprStyle::Plain);

class ExprParseError : public std::runtime_error {
 public:
  ExprParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
        pos_(pos) {}
  size_t position() const { return pos_; }

 private:
  size_t pos_;
};

/// Grammar: 1 | Z | Z<m> | A x B x C | Wr(G, m) | WrM(G, m) | Wr2(G, m, n)
/// | Wr2M(G, m, n) | TwWr(G, H, gamma, m) | TwWrM(G, H, gamma, m)
/// with gamma one of id, inv, perm[i1,...,ik] (1-based images).
/// Whitespace is insignificant; parentheses group.
GroupExpr parse_expr(const std::string& text);

/// Rewrites an expression to its canonical form: flattens nested products,
/// drops trivial factors, sorts product factors by the structural key, and
/// applies the construction isomorphisms
///   1 wr_1 Z = Z,   G wr_1 Z = G x Z,   G wr_{1,1} Z^2 = G x Z^2,
///   G wr_{m,1} Z^2 = (G wr_m Z) x Z,   (G,1) wr_{gamma,m} Z = G wr_2m Z.
GroupExpr normalize(const GroupExpr& e);

/// True when the normalized expression lies in the smallest class of groups
/// containing the trivial group and closed under direct products and
/// G -> G wr_m Z.
bool is_in_class_G(const GroupExpr& e);

}  // namespace morbit
