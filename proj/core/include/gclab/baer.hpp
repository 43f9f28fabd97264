#pragma once

#include <utility>
#include <vector>

#include "gclab/morita.hpp"
#include "gclab/torsor.hpp"

namespace gclab {

// A torsor packaged with its groupoid and the conjugation-invariant vertex
// identification used to take automorphism values in A.
struct BaerBundle {
  Groupoid X;
  BoundingFamily fam;
  GroupoidTorsor P;
};

void validate_bundle(const BaerBundle& b);

// One-object groupoid with arrow group A and the regular torsor on each of
// n_base fibres; point s*|A| + a sits over s.
BaerBundle trivial_bundle(const AbelianGroup& A, i64 n_base);

// Sum of two bundles over a common base. The groupoid is (X x Y)/A with the
// antidiagonal loop identification (m, n) ~ (m iso(a), n iso(-a)); the carrier
// is the proj-matched point pairs under the antidiagonal automorphisms. The
// representative tables are kept so functors in and out of the sum can be
// built.
struct BaerSum {
  BaerBundle bundle;
  std::vector<std::pair<int, int>> arrow_rep;  // sum arrow -> (X arrow, Y arrow)
  std::vector<int> arrow_class;                // m * |Y arrows| + n -> sum arrow
  std::vector<std::pair<i64, i64>> point_rep;  // sum point -> (p, q)
  std::vector<i64> point_class;                // p * |Q carrier| + q -> point or -1
};

BaerSum baer_sum(const BaerBundle& a, const BaerBundle& b);

// For S = baer_sum(Xb, trivial_bundle(...)): the Morita morphism collapsing
// the trivial factor, [(m, a)] -> m iso(a).
GroupoidFunctor collapse_with_trivial(const BaerBundle& Xb, const BaerSum& S);

}  // namespace gclab
