#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "gclab/cochain.hpp"
#include "gclab/extension.hpp"
#include "gclab/field_matrix.hpp"
#include "gclab/galois.hpp"
#include "gclab/gmodule.hpp"
#include "gclab/groupoid.hpp"

namespace gclab {

// Matrix model of the rank-n quantum torus over F_p, evaluated at every
// point (mu, nu) of (F_p^x)^2: u(mu,nu) = mu * g_alpha and v(mu,nu) =
// nu * g_beta where g_alpha = diag(1, zeta, ..., zeta^{n-1}) and g_beta is
// the cyclic shift. Construction verifies uv = zeta vu at every point plus
// the constant identities g_alpha g_beta = zeta g_beta g_alpha and
// g_alpha^n = g_beta^n = 1.
struct QuantumTorusData {
  int n = 0;
  i64 p = 0;
  FiniteField field;  // F_p
  i64 zeta = 0;       // lowest power of the field generator with order n
  FieldMatrix g_alpha;
  FieldMatrix g_beta;

  FieldMatrix u_at(i64 mu, i64 nu) const;
  FieldMatrix v_at(i64 mu, i64 nu) const;
};

// BadCongruence unless p = 1 mod n; NotPrime via the field construction.
QuantumTorusData quantum_torus_data(int n, i64 p);

// Deck translations (Z/n)^2 as a group; element i*n + j is alpha^i beta^j.
FiniteGroup deck_group(int n);
// Z/n coefficients with the trivial deck action; obstruction classes live here.
GModule deck_module(int n);

// Lift table g(alpha^i beta^j) = g_alpha^i g_beta^j, indexed like deck_group.
std::vector<FieldMatrix> normal_form_lifts(const QuantumTorusData& data);

// Entry action of a deck element on a lifted matrix; identity when empty.
// The shipped matrices have constant entries, so the examples all use the
// trivial hook, but the composition formula keeps the slot.
using DeckHook = std::function<FieldMatrix(int gamma, const FieldMatrix&)>;

// Scalar discrepancy table h(s,t) = dlog_zeta of g(s)*(s.g(t))*g(st)^{-1},
// one residue per pair, as a degree-2 cochain over deck_module(n).
// NegativeResult NotScalar(s,t) when some product is not a mu_n scalar,
// NotACocycle if the table fails the cocycle identity (reachable only
// through a hook; lifts with trivial hook always produce a cocycle).
Cochain pgl_obstruction_cocycle(const QuantumTorusData& data,
                                const std::vector<FieldMatrix>& lifts,
                                const DeckHook& hook = {});
Cochain pgl_obstruction_cocycle(const QuantumTorusData& data);

// Central extension of (Z/n)^2 by Z/n built from the obstruction cocycle at
// the smallest prime p = 1 mod n; nonabelian of order n^3 for n >= 2.
// Caps at n <= 5.
struct HeisenbergData {
  int n = 0;
  i64 p = 0;
  GModule module;
  Cochain cocycle;
  GroupExtension ext;
};
HeisenbergData heisenberg_extension(int n);

// Groupoid on the Kummer cover points above the listed base points: objects
// are fibre points (mu, nu) with mu^n = x, nu^n = y; arrows are fibre pairs
// over the same base decorated with a mu_n scalar (stored as its dlog);
// composition twists the scalar product by the obstruction table of the
// supplied lifts. Arrows stay within a fibre, so each base point contributes
// one connected component with n^2 objects and n^5 arrows.
struct SplittingGroupoid {
  int n = 0;
  i64 p = 0;
  i64 zeta = 0;
  std::vector<std::pair<i64, i64>> bases;  // base points (x, y)
  std::vector<std::pair<i64, i64>> roots;  // per base: the reference fibre point
  Cochain table;                           // scalar discrepancy, degree 2
  Groupoid X;
  BoundingFamily fam;  // iso_y(c) = (y, y, c)

  int object_index(int base, int imu, int inu) const;
  // Arrow from object y0 to y1 (same base) carrying scalar exponent c.
  int arrow_index(int y0, int y1, i64 c) const;
};

// Builds the groupoid from the given lifts over the given base points
// (each must have a nonempty fibre, i.e. both coordinates must be n-th
// powers). NotScalar surfaces from the obstruction computation; a
// non-cocycle scalar table surfaces as NotAssociative from validation.
SplittingGroupoid splitting_groupoid(const QuantumTorusData& data,
                                     const std::vector<FieldMatrix>& lifts,
                                     const std::vector<std::pair<i64, i64>>& bases,
                                     const DeckHook& hook = {});
// Normal-form lifts over the single base point (1, 1).
SplittingGroupoid splitting_groupoid(const QuantumTorusData& data);
// Direct build from a normalized scalar table (degree 2 over deck_module(n));
// used by mutation tests to reach the NotAssociative witness.
SplittingGroupoid splitting_groupoid_from_table(int n, const Cochain& table);

// Deck-equivariant wrapper over a single-fibre splitting groupoid: the deck
// group translates fibre points and fixes scalars, with coefficients in the
// trivial module deck_module(n). Feed to is_eliminable with
// GaloisContext{deck_module(n)}.
EquivariantGroupoid splitting_equivariant(const SplittingGroupoid& S);

// Norm-criterion verdict for the symbol algebra (a, b) of degree n over F_p:
// split iff b is a norm from F_p[X]/(X^n - a). When X^n - a is reducible the
// verdict is split with the degenerate flag and no witness search.
struct CyclicAlgebraReport {
  i64 p = 0;
  int n = 0;
  i64 a = 0, b = 0;
  bool split = false;
  bool degenerate = false;            // X^n - a reducible over F_p
  i64 witness = 0;                    // packed K element with norm b
  std::vector<i64> witness_coeffs;    // its digits, X^0 first
};

// BadCongruence unless p = 1 mod n; InvalidInput unless a, b lie in F_p^x.
// NegativeResult NotSplit when the exhaustive norm search fails.
CyclicAlgebraReport cyclic_algebra_split(i64 p, int n, i64 a, i64 b);

// |F_p^x / (F_p^x)^n| by direct enumeration of n-th powers.
i64 power_class_count(i64 p, int n);

// Side-by-side finite shadow of the degree-1 Kummer isomorphism: the power
// class count, the order of H^1(Z/n, Z/n trivial), and gcd(n, p-1) with
// agreement flags. Requires n | p - 1 (BadCongruence), which makes all three
// numbers equal.
struct KummerReport {
  i64 p = 0;
  int n = 0;
  i64 power_classes = 0;
  i64 h1_order = 0;
  i64 gcd_value = 0;
  bool classes_match_gcd = false;
  bool matches_h1 = false;
};
KummerReport kummer_h1_check(i64 p, int n);

}  // namespace gclab
