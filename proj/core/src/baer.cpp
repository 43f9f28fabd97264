#include "gclab/baer.hpp"

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "gclab/caps.hpp"
#include "gclab/errors.hpp"

namespace gclab {

namespace {

// Union-find with path halving; roots are class minima because unite hangs
// the larger root under the smaller one.
struct UnionFind {
  std::vector<i64> parent;

  explicit UnionFind(i64 n) : parent(n) { std::iota(parent.begin(), parent.end(), i64{0}); }
  i64 find(i64 x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(i64 a, i64 b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[b] = a;
  }
};

}  // namespace

void validate_bundle(const BaerBundle& b) {
  validate_groupoid(b.X);
  validate_bounding_family(b.X, b.fam);
  if (auto defect = family_conjugation_defect(b.X, b.fam))
    fail(ValidationError::Code::NotCompatible, *defect,
         "bundle family is not conjugation invariant");
  if (!(b.P.X == b.X))
    fail(ValidationError::Code::ShapeMismatch, {},
         "bundle torsor lives over a different groupoid");
  validate_torsor(b.P);
}

BaerBundle trivial_bundle(const AbelianGroup& A, i64 n_base) {
  if (n_base < 1)
    fail(ValidationError::Code::InvalidInput, {n_base}, "trivial bundle needs a nonempty base");
  BaerBundle T;
  T.X = one_object_groupoid(A.to_group());
  T.fam.A = A;
  T.fam.iso.assign(1, std::vector<i64>(A.order));
  std::iota(T.fam.iso[0].begin(), T.fam.iso[0].end(), i64{0});

  T.P.X = T.X;
  T.P.n_base = n_base;
  T.P.n_carrier = n_base * A.order;
  T.P.proj.resize(T.P.n_carrier);
  T.P.anchor.assign(T.P.n_carrier, 0);
  for (i64 p = 0; p < T.P.n_carrier; ++p) T.P.proj[p] = p / A.order;
  T.P.action.assign(A.order, std::vector<i64>(T.P.n_carrier));
  for (i64 bb = 0; bb < A.order; ++bb)
    for (i64 s = 0; s < n_base; ++s)
      for (i64 aa = 0; aa < A.order; ++aa)
        T.P.action[bb][s * A.order + aa] = s * A.order + A.add(aa, bb);
  validate_bundle(T);
  return T;
}

BaerSum baer_sum(const BaerBundle& a, const BaerBundle& b) {
  validate_bundle(a);
  validate_bundle(b);
  const AbelianGroup& A = a.fam.A;
  if (A.moduli != b.fam.A.moduli)
    fail(ValidationError::Code::CoefficientMismatch, {}, "bundle coefficient groups differ");
  if (a.P.n_base != b.P.n_base)
    fail(ValidationError::Code::IncompatibleBases, {a.P.n_base, b.P.n_base},
         "bundle bases differ");

  const Groupoid& X = a.X;
  const Groupoid& Y = b.X;
  const i64 nA = A.order;
  const i64 nY1 = Y.n_arrows;
  const i64 pairs = i64{X.n_arrows} * nY1;
  if (pairs > i64{kGroupoidArrowCap} * nA)
    throw CapExceeded("bundle sum arrow count exceeds the groupoid arrow cap");

  // Arrow classes of the antidiagonal identification
  // (m, n) ~ (m iso(c), n iso(-c)).
  UnionFind uf(pairs);
  for (int m = 0; m < X.n_arrows; ++m)
    for (int n = 0; n < nY1; ++n)
      for (i64 cc = 0; cc < nA; ++cc) {
        int mm = X.compose(m, static_cast<int>(a.fam.iso[X.tgt[m]][cc]));
        int nn = Y.compose(n, static_cast<int>(b.fam.iso[Y.tgt[n]][A.neg(cc)]));
        uf.unite(i64{m} * nY1 + n, i64{mm} * nY1 + nn);
      }
  std::vector<int> arrow_class(pairs, -1);
  std::vector<std::pair<int, int>> arrow_rep;
  for (i64 k = 0; k < pairs; ++k) {
    i64 r = uf.find(k);
    if (arrow_class[r] < 0) {
      arrow_class[r] = static_cast<int>(arrow_rep.size());
      arrow_rep.emplace_back(static_cast<int>(r / nY1), static_cast<int>(r % nY1));
    }
    arrow_class[k] = arrow_class[r];
  }

  // The quotient groupoid. All structure maps descend along representatives
  // because conjugation invariance lets family loops slide across arrows.
  const int nZ0 = X.n_objects * Y.n_objects;
  const int nZ1 = static_cast<int>(arrow_rep.size());
  Groupoid Z;
  Z.n_objects = nZ0;
  Z.n_arrows = nZ1;
  Z.src.resize(nZ1);
  Z.tgt.resize(nZ1);
  Z.inv.resize(nZ1);
  Z.id_of.resize(nZ0);
  Z.table.assign(static_cast<size_t>(nZ1) * nZ1, -1);
  for (int z = 0; z < nZ1; ++z) {
    auto [m, n] = arrow_rep[z];
    Z.src[z] = X.src[m] * Y.n_objects + Y.src[n];
    Z.tgt[z] = X.tgt[m] * Y.n_objects + Y.tgt[n];
    Z.inv[z] = arrow_class[i64{X.inv[m]} * nY1 + Y.inv[n]];
  }
  for (int x = 0; x < X.n_objects; ++x)
    for (int y = 0; y < Y.n_objects; ++y)
      Z.id_of[x * Y.n_objects + y] = arrow_class[i64{X.id_of[x]} * nY1 + Y.id_of[y]];
  for (int z = 0; z < nZ1; ++z)
    for (int w = 0; w < nZ1; ++w) {
      if (Z.tgt[z] != Z.src[w]) continue;
      auto [m, n] = arrow_rep[z];
      auto [mm, nn] = arrow_rep[w];
      Z.table[static_cast<size_t>(z) * nZ1 + w] =
          arrow_class[i64{X.compose(m, mm)} * nY1 + Y.compose(n, nn)];
    }
  Z = validate_groupoid(Z);

  BoundingFamily famZ;
  famZ.A = A;
  famZ.iso.assign(nZ0, std::vector<i64>(nA));
  for (int x = 0; x < X.n_objects; ++x)
    for (int y = 0; y < Y.n_objects; ++y)
      for (i64 aa = 0; aa < nA; ++aa)
        famZ.iso[x * Y.n_objects + y][aa] =
            arrow_class[a.fam.iso[x][aa] * nY1 + Y.id_of[y]];
  validate_bounding_family(Z, famZ);

  // Carrier classes of (p, q) ~ (phi_c p, phi_{-c} q) over matched fibres.
  const TorsorAutomorphisms autP = torsor_automorphisms(a.P, a.fam);
  const TorsorAutomorphisms autQ = torsor_automorphisms(b.P, b.fam);
  const i64 nPc = a.P.n_carrier;
  const i64 nQc = b.P.n_carrier;
  UnionFind pf(nPc * nQc);
  for (i64 p = 0; p < nPc; ++p)
    for (i64 q = 0; q < nQc; ++q) {
      if (a.P.proj[p] != b.P.proj[q]) continue;
      for (i64 cc = 0; cc < nA; ++cc)
        pf.unite(p * nQc + q, autP.maps[cc][p] * nQc + autQ.maps[A.neg(cc)][q]);
    }
  std::vector<i64> point_class(nPc * nQc, -1);
  std::vector<std::pair<i64, i64>> point_rep;
  for (i64 p = 0; p < nPc; ++p)
    for (i64 q = 0; q < nQc; ++q) {
      if (a.P.proj[p] != b.P.proj[q]) continue;
      i64 k = p * nQc + q;
      i64 r = pf.find(k);
      if (point_class[r] < 0) {
        point_class[r] = static_cast<i64>(point_rep.size());
        point_rep.emplace_back(r / nQc, r % nQc);
      }
      point_class[k] = point_class[r];
    }

  GroupoidTorsor R;
  R.X = Z;
  R.n_carrier = static_cast<i64>(point_rep.size());
  R.n_base = a.P.n_base;
  R.proj.resize(R.n_carrier);
  R.anchor.resize(R.n_carrier);
  for (i64 r = 0; r < R.n_carrier; ++r) {
    auto [p, q] = point_rep[r];
    R.proj[r] = a.P.proj[p];
    R.anchor[r] = a.P.anchor[p] * Y.n_objects + b.P.anchor[q];
  }
  R.action.assign(nZ1, std::vector<i64>(R.n_carrier, -1));
  for (int z = 0; z < nZ1; ++z) {
    auto [m, n] = arrow_rep[z];
    for (i64 r = 0; r < R.n_carrier; ++r) {
      if (Z.src[z] != R.anchor[r]) continue;
      auto [p, q] = point_rep[r];
      R.action[z][r] = point_class[a.P.act_raw(m, p) * nQc + b.P.act_raw(n, q)];
    }
  }

  BaerSum S;
  S.bundle = BaerBundle{Z, famZ, R};
  S.arrow_rep = std::move(arrow_rep);
  S.arrow_class = std::move(arrow_class);
  S.point_rep = std::move(point_rep);
  S.point_class = std::move(point_class);
  validate_bundle(S.bundle);
  return S;
}

GroupoidFunctor collapse_with_trivial(const BaerBundle& Xb, const BaerSum& S) {
  const Groupoid& X = Xb.X;
  const Groupoid& Z = S.bundle.X;
  const AbelianGroup& A = Xb.fam.A;
  if (Z.n_objects != X.n_objects ||
      S.arrow_class.size() != static_cast<size_t>(X.n_arrows) * A.order)
    fail(ValidationError::Code::ShapeMismatch, {Z.n_objects, X.n_objects},
         "sum is not over the given bundle with a one-object trivial factor");
  GroupoidFunctor F;
  F.source = Z;
  F.target = X;
  F.f0.resize(Z.n_objects);
  std::iota(F.f0.begin(), F.f0.end(), 0);
  F.f1.resize(Z.n_arrows);
  for (int zeta = 0; zeta < Z.n_arrows; ++zeta) {
    auto [m, bb] = S.arrow_rep[zeta];
    F.f1[zeta] = X.compose(m, static_cast<int>(Xb.fam.iso[X.tgt[m]][bb]));
  }
  return validate_morita_morphism(F);
}

}  // namespace gclab
