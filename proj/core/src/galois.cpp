#include "gclab/galois.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "gclab/caps.hpp"
#include "gclab/errors.hpp"

namespace gclab {

namespace {

[[noreturn]] void hypothesis(const std::string& name, std::vector<i64> witness = {}) {
  fail(ValidationError::Code::HypothesisFailed, std::move(witness),
       "hypothesis failed: " + name);
}

template <class T>
bool is_permutation(const std::vector<T>& v, i64 n) {
  if (static_cast<i64>(v.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (T x : v) {
    if (x < 0 || static_cast<i64>(x) >= n || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

// All additive automorphisms of A as full index maps, ordered by the images
// of the cyclic factor units. A map is additive exactly when each unit image
// is killed by the factor modulus, so candidates are filtered by order and
// then by bijectivity.
std::vector<std::vector<i64>> abelian_automorphisms(const AbelianGroup& A) {
  std::vector<int> live;
  for (size_t i = 0; i < A.moduli.size(); ++i)
    if (A.moduli[i] > 1) live.push_back(static_cast<int>(i));
  i64 budget = 1;
  for (size_t i = 0; i < live.size(); ++i) {
    if (budget > kHardEnumerationCap / A.order) {
      budget = kHardEnumerationCap + 1;
      break;
    }
    budget *= A.order;
  }
  check_enumeration_budget(budget, "coefficient automorphism sweep");

  std::vector<std::vector<i64>> out;
  std::vector<i64> images(live.size(), 0);
  const int k = static_cast<int>(live.size());
  while (true) {
    bool admissible = true;
    for (int j = 0; j < k && admissible; ++j)
      admissible = A.moduli[live[j]] % A.order_of(images[j]) == 0;
    if (admissible) {
      std::vector<i64> map(A.order);
      std::vector<char> seen(A.order, 0);
      bool bijective = true;
      for (i64 a = 0; a < A.order && bijective; ++a) {
        std::vector<i64> t = A.tuple(a);
        i64 fa = 0;
        for (int j = 0; j < k; ++j) fa = A.add(fa, A.smul(t[live[j]], images[j]));
        map[a] = fa;
        if (seen[fa]) bijective = false;
        seen[fa] = 1;
      }
      if (bijective) out.push_back(std::move(map));
    }
    int j = k - 1;
    while (j >= 0 && images[j] == A.order - 1) images[j--] = 0;
    if (j < 0) break;
    ++images[j];
  }
  return out;
}

bool same_torsor(const GroupoidTorsor& a, const GroupoidTorsor& b) {
  return a.X == b.X && a.n_carrier == b.n_carrier && a.n_base == b.n_base &&
         a.proj == b.proj && a.anchor == b.anchor && a.action == b.action;
}

// Carrier of arrows into object 0 of a connected groupoid, with the inverse
// position table and the identity basepoint.
struct StarCarrier {
  std::vector<int> arrows;  // carrier point -> arrow
  std::vector<i64> pos;     // arrow -> carrier point or -1
  GroupoidTorsor P;
  i64 basepoint = 0;
};

StarCarrier build_star(const Groupoid& X) {
  StarCarrier S;
  S.pos.assign(X.n_arrows, -1);
  for (int m = 0; m < X.n_arrows; ++m) {
    if (X.tgt[m] != 0) continue;
    S.pos[m] = static_cast<i64>(S.arrows.size());
    S.arrows.push_back(m);
  }
  const i64 nC = static_cast<i64>(S.arrows.size());
  S.P.X = X;
  S.P.n_carrier = nC;
  S.P.n_base = 1;
  S.P.proj.assign(nC, 0);
  S.P.anchor.resize(nC);
  for (i64 i = 0; i < nC; ++i) S.P.anchor[i] = X.src[S.arrows[i]];
  S.P.action.assign(X.n_arrows, std::vector<i64>(nC, -1));
  for (int s = 0; s < X.n_arrows; ++s)
    for (i64 i = 0; i < nC; ++i)
      if (X.src[s] == S.P.anchor[i])
        S.P.action[s][i] = S.pos[X.compose(X.inv[s], S.arrows[i])];
  S.basepoint = S.pos[X.id_of[0]];
  S.P = validate_torsor(S.P);
  return S;
}

}  // namespace

void validate_equivariant_groupoid(const GaloisContext& ctx, const EquivariantGroupoid& EX) {
  const Groupoid& X = EX.X;
  validate_groupoid(X);
  if (!(EX.gal == ctx.coeff.G))
    fail(ValidationError::Code::ModuleMismatch, {},
         "acting group differs from the context group");
  const int nG = EX.gal.order;
  if (static_cast<int>(EX.obj_act.size()) != nG || static_cast<int>(EX.arr_act.size()) != nG)
    fail(ValidationError::Code::ShapeMismatch, {},
         "action tables need one row per acting element");
  for (int g = 0; g < nG; ++g) {
    if (!is_permutation(EX.obj_act[g], X.n_objects))
      fail(ValidationError::Code::NotEquivariant, {g}, "object action row is not a permutation");
    if (!is_permutation(EX.arr_act[g], X.n_arrows))
      fail(ValidationError::Code::NotEquivariant, {g}, "arrow action row is not a permutation");
  }
  const int e = EX.gal.identity;
  for (int x = 0; x < X.n_objects; ++x)
    if (EX.obj_act[e][x] != x)
      fail(ValidationError::Code::NotEquivariant, {e, x}, "identity moves an object");
  for (int m = 0; m < X.n_arrows; ++m)
    if (EX.arr_act[e][m] != m)
      fail(ValidationError::Code::NotEquivariant, {e, m}, "identity moves an arrow");
  for (int g = 0; g < nG; ++g)
    for (int h = 0; h < nG; ++h) {
      const int gh = EX.gal.op(g, h);
      for (int x = 0; x < X.n_objects; ++x)
        if (EX.obj_act[gh][x] != EX.obj_act[g][EX.obj_act[h][x]])
          fail(ValidationError::Code::NotEquivariant, {g, h, x},
               "object action is not a left action");
      for (int m = 0; m < X.n_arrows; ++m)
        if (EX.arr_act[gh][m] != EX.arr_act[g][EX.arr_act[h][m]])
          fail(ValidationError::Code::NotEquivariant, {g, h, m},
               "arrow action is not a left action");
    }
  for (int g = 0; g < nG; ++g) {
    for (int m = 0; m < X.n_arrows; ++m) {
      const int gm = EX.arr_act[g][m];
      if (X.src[gm] != EX.obj_act[g][X.src[m]] || X.tgt[gm] != EX.obj_act[g][X.tgt[m]])
        fail(ValidationError::Code::NotEquivariant, {g, m}, "arrow action breaks endpoints");
    }
    for (int m = 0; m < X.n_arrows; ++m)
      for (int n = 0; n < X.n_arrows; ++n) {
        const int mn = X.compose_raw(m, n);
        if (mn < 0) continue;
        if (EX.arr_act[g][mn] != X.compose(EX.arr_act[g][m], EX.arr_act[g][n]))
          fail(ValidationError::Code::NotEquivariant, {g, m, n},
               "arrow action breaks composition");
      }
  }
  if (EX.fam) {
    validate_bounding_family(X, *EX.fam);
    if (auto defect = family_conjugation_defect(X, *EX.fam))
      fail(ValidationError::Code::NotCompatible, *defect,
           "bounding family is not conjugation invariant");
    if (EX.fam->A.moduli != ctx.coeff.A.moduli)
      fail(ValidationError::Code::CoefficientMismatch, {},
           "bounding family coefficients differ from the context");
    for (int g = 0; g < nG; ++g)
      for (int x = 0; x < X.n_objects; ++x)
        for (i64 a = 0; a < ctx.coeff.A.order; ++a)
          if (EX.arr_act[g][EX.fam->iso[x][a]] !=
              EX.fam->iso[EX.obj_act[g][x]][ctx.coeff.act(g, a)])
            fail(ValidationError::Code::NotEquivariant, {g, x, a},
                 "bounding family is not action compatible");
  }
}

void validate_equivariant_torsor(const GaloisContext& ctx, const EquivariantGroupoid& EX,
                                 const EquivariantTorsor& EP) {
  const GroupoidTorsor& P = EP.P;
  validate_torsor(P);
  if (!(P.X == EX.X))
    fail(ValidationError::Code::ShapeMismatch, {}, "torsor lives over a different groupoid");
  const int nG = EX.gal.order;
  if (static_cast<int>(EP.base_act.size()) != nG ||
      static_cast<int>(EP.carrier_act.size()) != nG)
    fail(ValidationError::Code::ShapeMismatch, {},
         "torsor lift tables need one row per acting element");
  for (int g = 0; g < nG; ++g) {
    if (!is_permutation(EP.base_act[g], P.n_base))
      fail(ValidationError::Code::NotEquivariant, {g}, "base action row is not a permutation");
    if (!is_permutation(EP.carrier_act[g], P.n_carrier))
      fail(ValidationError::Code::NotEquivariant, {g}, "carrier lift row is not a permutation");
  }
  for (int g = 0; g < nG; ++g)
    for (int h = 0; h < nG; ++h)
      for (i64 s = 0; s < P.n_base; ++s)
        if (EP.base_act[EX.gal.op(g, h)][s] != EP.base_act[g][EP.base_act[h][s]])
          fail(ValidationError::Code::NotEquivariant, {g, h, s},
               "base action is not a left action");
  for (int g = 0; g < nG; ++g)
    for (i64 p = 0; p < P.n_carrier; ++p) {
      const i64 gp = EP.carrier_act[g][p];
      if (P.proj[gp] != EP.base_act[g][P.proj[p]])
        fail(ValidationError::Code::NotEquivariant, {g, p},
             "carrier lift does not cover the base action");
      if (P.anchor[gp] != EX.obj_act[g][P.anchor[p]])
        fail(ValidationError::Code::NotEquivariant, {g, p},
             "carrier lift does not track anchors");
    }
  for (int g = 0; g < nG; ++g)
    for (int m = 0; m < EX.X.n_arrows; ++m)
      for (i64 p = 0; p < P.n_carrier; ++p) {
        const i64 mp = P.act_raw(m, p);
        if (mp < 0) continue;
        if (EP.carrier_act[g][mp] !=
            P.act_raw(EX.arr_act[g][m], EP.carrier_act[g][p]))
          fail(ValidationError::Code::NotEquivariant, {g, m, p},
               "carrier lift does not commute with the groupoid action");
      }
  if (EP.basepoint < 0 || EP.basepoint >= P.n_carrier)
    fail(ValidationError::Code::InvalidInput, {EP.basepoint}, "basepoint out of range");
}

void validate_descent_hypotheses(const GaloisContext& ctx, const EquivariantGroupoid& EX,
                                 const EquivariantTorsor& EP) {
  validate_equivariant_groupoid(ctx, EX);
  if (!EX.fam) hypothesis("a compatible bounding family is installed");
  if (!is_connected(EX.X)) hypothesis("the groupoid is connected");
  validate_equivariant_torsor(ctx, EX, EP);
  if (EP.P.n_base != 1)
    hypothesis("the torsor base is a single component", {EP.P.n_base});
  const int e = EX.gal.identity;
  for (i64 p = 0; p < EP.P.n_carrier; ++p)
    if (EP.carrier_act[e][p] != p)
      hypothesis("the identity lift is the identity", {p});
}

void ensure_compatible_family(const GaloisContext& ctx, EquivariantGroupoid& EX) {
  validate_equivariant_groupoid(ctx, EX);
  if (EX.fam) return;
  if (!is_connected(EX.X)) hypothesis("the groupoid is connected");
  auto tree = bounded_by(EX.X, ctx.coeff.A);
  if (!tree) hypothesis("the groupoid is bounded by the coefficient group");
  const i64 nA = ctx.coeff.A.order;
  const int nG = EX.gal.order;
  for (const std::vector<i64>& psi : abelian_automorphisms(ctx.coeff.A)) {
    BoundingFamily cand;
    cand.A = ctx.coeff.A;
    cand.iso.assign(EX.X.n_objects, std::vector<i64>(nA));
    for (int x = 0; x < EX.X.n_objects; ++x)
      for (i64 a = 0; a < nA; ++a) cand.iso[x][a] = tree->iso[x][psi[a]];
    bool ok = true;
    for (int g = 0; g < nG && ok; ++g)
      for (int x = 0; x < EX.X.n_objects && ok; ++x)
        for (i64 a = 0; a < nA && ok; ++a)
          ok = EX.arr_act[g][cand.iso[x][a]] ==
               cand.iso[EX.obj_act[g][x]][ctx.coeff.act(g, a)];
    if (ok) {
      EX.fam = std::move(cand);
      validate_equivariant_groupoid(ctx, EX);
      return;
    }
  }
  hypothesis("an action-compatible bounding family exists");
}

Cochain cocycle_from_torsor(const GaloisContext& ctx, const EquivariantGroupoid& EX,
                            const EquivariantTorsor& EP) {
  validate_descent_hypotheses(ctx, EX, EP);
  const TorsorAutomorphisms auts = torsor_automorphisms(EP.P, *EX.fam);
  const FiniteGroup& Gam = EX.gal;
  const int nG = Gam.order;
  const i64 nC = EP.P.n_carrier;
  std::vector<std::vector<i64>> uinv(nG, std::vector<i64>(nC));
  for (int g = 0; g < nG; ++g)
    for (i64 p = 0; p < nC; ++p) uinv[g][EP.carrier_act[g][p]] = p;
  Cochain h = zero_cochain(ctx.coeff, 2);
  std::vector<i64> comp(nC);
  for (int s = 0; s < nG; ++s)
    for (int t = 0; t < nG; ++t) {
      const int st = Gam.op(s, t);
      for (i64 p = 0; p < nC; ++p) comp[p] = EP.carrier_act[st][uinv[t][uinv[s][p]]];
      h.values[static_cast<i64>(s) * nG + t] = auts.value_of(comp);
    }
  std::vector<i64> w;
  if (!is_cocycle(ctx.coeff, h, &w))
    fail(ValidationError::Code::InvalidInput, w,
         "internal: extracted table fails the cocycle identity");
  return h;
}

DescentPresentation groupoid_from_cocycle(const GaloisContext& ctx, const Cochain& beta) {
  const GModule& M = ctx.coeff;
  if (beta.degree != 2)
    fail(ValidationError::Code::InvalidInput, {beta.degree}, "descent input must have degree 2");
  check_cochain_shape(M, beta);
  const Cochain bn = normalize(M, beta);
  DescentPresentation D;
  D.E = extension_from_cocycle(M, bn);
  const FiniteGroup& Gam = M.G;
  const FiniteGroup& G = D.E.total;
  const int nGam = Gam.order;

  std::vector<std::vector<i64>> action(G.order, std::vector<i64>(nGam));
  for (int g = 0; g < G.order; ++g)
    for (int y = 0; y < nGam; ++y) action[g][y] = Gam.op(D.E.projection.map[g], y);
  Groupoid X = action_groupoid(G, action);

  D.X.X = X;
  D.X.gal = Gam;
  D.X.obj_act.assign(nGam, std::vector<int>(nGam));
  D.X.arr_act.assign(nGam, std::vector<int>(X.n_arrows));
  for (int g = 0; g < nGam; ++g) {
    for (int y = 0; y < nGam; ++y) D.X.obj_act[g][y] = Gam.op(y, Gam.inv(g));
    for (int m = 0; m < X.n_arrows; ++m)
      D.X.arr_act[g][m] = (m / nGam) * nGam + Gam.op(m % nGam, Gam.inv(g));
  }
  BoundingFamily fam;
  fam.A = M.A;
  fam.iso.assign(nGam, std::vector<i64>(M.A.order));
  for (int y = 0; y < nGam; ++y)
    for (i64 a = 0; a < M.A.order; ++a)
      fam.iso[y][a] =
          static_cast<i64>(D.E.kernel_embedding.map[M.act(y, a)]) * nGam + y;
  D.X.fam = std::move(fam);

  // Represented torsor at the identity object: one carrier point per group
  // element, sitting on the arrow (g, proj(g)^-1).
  auto point_arrow = [&](i64 p) {
    return static_cast<int>(p) * nGam + Gam.inv(D.E.projection.map[p]);
  };
  GroupoidTorsor P;
  P.X = X;
  P.n_carrier = G.order;
  P.n_base = 1;
  P.proj.assign(G.order, 0);
  P.anchor.resize(G.order);
  for (i64 p = 0; p < P.n_carrier; ++p) P.anchor[p] = X.src[point_arrow(p)];
  P.action.assign(X.n_arrows, std::vector<i64>(P.n_carrier, -1));
  for (int m = 0; m < X.n_arrows; ++m)
    for (i64 p = 0; p < P.n_carrier; ++p) {
      if (X.src[m] != P.anchor[p]) continue;
      P.action[m][p] = X.compose(X.inv[m], point_arrow(p)) / nGam;
    }
  D.P.P = std::move(P);
  D.P.base_act.assign(nGam, std::vector<i64>{0});
  D.P.carrier_act.assign(nGam, std::vector<i64>(G.order));
  for (int g = 0; g < nGam; ++g) {
    const int corrector = g * nGam + Gam.inv(g);  // arrow ((0, g), g^-1)
    for (i64 p = 0; p < D.P.P.n_carrier; ++p)
      D.P.carrier_act[g][p] =
          X.compose(D.X.arr_act[g][point_arrow(p)], corrector) / nGam;
  }
  D.P.basepoint = D.E.total.identity;
  validate_descent_hypotheses(ctx, D.X, D.P);
  return D;
}

EquivariantTorsor star_equivariant_torsor(const GaloisContext& ctx,
                                          const EquivariantGroupoid& EX, int corrector_rank) {
  validate_equivariant_groupoid(ctx, EX);
  if (!EX.fam) hypothesis("a compatible bounding family is installed");
  if (!is_connected(EX.X)) hypothesis("the groupoid is connected");
  if (corrector_rank < 0)
    fail(ValidationError::Code::InvalidInput, {corrector_rank}, "corrector rank is negative");
  const Groupoid& X = EX.X;
  const StarCarrier S = build_star(X);
  const int nG = EX.gal.order;
  EquivariantTorsor EP;
  EP.P = S.P;
  EP.base_act.assign(nG, std::vector<i64>{0});
  EP.carrier_act.assign(nG, std::vector<i64>(S.P.n_carrier));
  EP.basepoint = S.basepoint;
  for (int g = 0; g < nG; ++g) {
    int corrector = X.id_of[0];
    if (g != EX.gal.identity) {
      const std::vector<int> homs = hom_set(X, EX.obj_act[g][0], 0);
      corrector = homs[corrector_rank % static_cast<int>(homs.size())];
    }
    for (i64 i = 0; i < S.P.n_carrier; ++i)
      EP.carrier_act[g][i] = S.pos[X.compose(EX.arr_act[g][S.arrows[i]], corrector)];
  }
  validate_descent_hypotheses(ctx, EX, EP);
  return EP;
}

Cochain quasi_action_mismatch(const GaloisContext& ctx, const EquivariantGroupoid& EX,
                              const EquivariantTorsor& first, const EquivariantTorsor& second) {
  validate_descent_hypotheses(ctx, EX, first);
  validate_descent_hypotheses(ctx, EX, second);
  if (!same_torsor(first.P, second.P))
    fail(ValidationError::Code::ShapeMismatch, {}, "lifts live on different torsors");
  const TorsorAutomorphisms auts = torsor_automorphisms(first.P, *EX.fam);
  const int nG = EX.gal.order;
  const i64 nC = first.P.n_carrier;
  Cochain g = zero_cochain(ctx.coeff, 1);
  std::vector<i64> uinv(nC), comp(nC);
  for (int s = 0; s < nG; ++s) {
    for (i64 p = 0; p < nC; ++p) uinv[first.carrier_act[s][p]] = p;
    for (i64 p = 0; p < nC; ++p) comp[p] = second.carrier_act[s][uinv[p]];
    g.values[s] = auts.value_of(comp);
  }
  return g;
}

std::optional<EquivariantTorsor> search_invariant_torsor(const GaloisContext& ctx,
                                                         const EquivariantGroupoid& EX) {
  validate_equivariant_groupoid(ctx, EX);
  if (!EX.fam) hypothesis("a compatible bounding family is installed");
  if (!is_connected(EX.X)) hypothesis("the groupoid is connected");
  const Groupoid& X = EX.X;
  const StarCarrier S = build_star(X);
  const FiniteGroup& Gam = EX.gal;
  const int nG = Gam.order;
  const int e = Gam.identity;
  const i64 nC = S.P.n_carrier;
  const i64 x0 = S.basepoint;

  std::vector<std::vector<i64>> cands(nG);
  for (int g = 0; g < nG; ++g) {
    if (g == e) {
      cands[g] = {x0};
      continue;
    }
    for (i64 q = 0; q < nC; ++q)
      if (S.P.anchor[q] == EX.obj_act[g][0]) cands[g].push_back(q);
  }
  i64 budget = 1;
  for (int g = 0; g < nG; ++g) {
    const i64 c = static_cast<i64>(cands[g].size());
    if (budget > kHardEnumerationCap / std::max<i64>(c, 1)) {
      budget = kHardEnumerationCap + 1;
      break;
    }
    budget *= c;
  }
  check_enumeration_budget(budget, "invariant torsor search");

  // carrier point q as basepoint image of g sends p to the class of
  // g(arrow of p) followed by the arrow of q.
  auto lifted = [&](int g, i64 q, i64 p) {
    return S.pos[X.compose(EX.arr_act[g][S.arrows[p]], S.arrows[q])];
  };

  std::vector<int> pick(nG, 0);
  while (true) {
    bool strict = true;
    for (int g = 0; g < nG && strict; ++g)
      for (int h = 0; h < nG && strict; ++h)
        strict = lifted(g, cands[g][pick[g]], cands[h][pick[h]]) ==
                 cands[Gam.op(g, h)][pick[Gam.op(g, h)]];
    if (strict) {
      EquivariantTorsor EP;
      EP.P = S.P;
      EP.base_act.assign(nG, std::vector<i64>{0});
      EP.carrier_act.assign(nG, std::vector<i64>(nC));
      for (int g = 0; g < nG; ++g)
        for (i64 p = 0; p < nC; ++p)
          EP.carrier_act[g][p] = lifted(g, cands[g][pick[g]], p);
      EP.basepoint = x0;
      validate_descent_hypotheses(ctx, EX, EP);
      for (int g = 0; g < nG; ++g)
        for (int h = 0; h < nG; ++h)
          for (i64 p = 0; p < nC; ++p)
            if (EP.carrier_act[Gam.op(g, h)][p] !=
                EP.carrier_act[g][EP.carrier_act[h][p]])
              fail(ValidationError::Code::InvalidInput, {g, h, p},
                   "internal: strictness at the basepoint did not propagate");
      return EP;
    }
    int j = nG - 1;
    while (j >= 0 && (j == e || pick[j] + 1 == static_cast<int>(cands[j].size())))
      pick[j--] = 0;
    if (j < 0) return std::nullopt;
    ++pick[j];
  }
}

EliminabilityVerdict is_eliminable(const GaloisContext& ctx, const EquivariantGroupoid& EX) {
  EquivariantGroupoid EXf = EX;
  ensure_compatible_family(ctx, EXf);
  const EquivariantTorsor EP = star_equivariant_torsor(ctx, EXf, 0);
  const Cochain h = cocycle_from_torsor(ctx, EXf, EP);
  const CohomologyGroup H2 = cohomology_group(ctx.coeff, 2);

  EliminabilityVerdict v;
  v.class_coords = H2.class_of(h);
  v.invariant_factors = H2.invariant_factors;
  v.eliminable =
      std::all_of(v.class_coords.begin(), v.class_coords.end(), [](i64 c) { return c == 0; });
  if (v.eliminable) {
    v.coboundary_witness = cohomologous(ctx.coeff, h, zero_cochain(ctx.coeff, 2));
    if (!v.coboundary_witness)
      fail(ValidationError::Code::InvalidInput, {},
           "internal: trivial class without a coboundary witness");
  }
  try {
    v.invariant_torsor = search_invariant_torsor(ctx, EXf);
    v.search_ran = true;
    v.paths_agree = v.invariant_torsor.has_value() == v.eliminable;
  } catch (const CapExceeded&) {
    v.search_ran = false;
    v.paths_agree = true;
  }
  return v;
}

TransportReport morita_class_invariance(const GaloisContext& ctx,
                                        const EquivariantGroupoid& src,
                                        const EquivariantGroupoid& tgt,
                                        const GroupoidFunctor& f,
                                        const EquivariantTorsor& EP) {
  EquivariantGroupoid T = tgt;
  ensure_compatible_family(ctx, T);
  // The source carries the transported family; a pre-installed one is
  // ignored.
  EquivariantGroupoid S = src;
  S.fam.reset();
  validate_equivariant_groupoid(ctx, S);
  validate_morita_morphism(f);
  if (!(f.source == S.X) || !(f.target == T.X))
    fail(ValidationError::Code::ShapeMismatch, {},
         "morphism endpoints differ from the given groupoids");
  validate_descent_hypotheses(ctx, T, EP);
  const int nG = S.gal.order;
  for (int g = 0; g < nG; ++g) {
    for (int x = 0; x < S.X.n_objects; ++x)
      if (f.f0[S.obj_act[g][x]] != T.obj_act[g][f.f0[x]])
        fail(ValidationError::Code::NotEquivariant, {g, x},
             "morphism does not commute with the object actions");
    for (int m = 0; m < S.X.n_arrows; ++m)
      if (f.f1[S.arr_act[g][m]] != T.arr_act[g][f.f1[m]])
        fail(ValidationError::Code::NotEquivariant, {g, m},
             "morphism does not commute with the arrow actions");
  }

  // Transported family: the unique loop at x over the family loop at f0(x).
  const i64 nA = ctx.coeff.A.order;
  BoundingFamily pulled;
  pulled.A = ctx.coeff.A;
  pulled.iso.assign(S.X.n_objects, std::vector<i64>(nA));
  for (int x = 0; x < S.X.n_objects; ++x) {
    const std::vector<int> loops = hom_set(S.X, x, x);
    for (i64 a = 0; a < nA; ++a) {
      const i64 w = T.fam->iso[f.f0[x]][a];
      i64 found = -1;
      for (int m : loops)
        if (f.f1[m] == w) {
          found = m;
          break;
        }
      if (found < 0)
        fail(ValidationError::Code::InvalidInput, {x, a},
             "internal: transported family loop has no preimage");
      pulled.iso[x][a] = found;
    }
  }
  S.fam = std::move(pulled);
  validate_equivariant_groupoid(ctx, S);

  // Pullback torsor with the pointwise lift over pairs (x, p).
  GroupoidTorsor PP = pullback_torsor(f, EP.P);
  const i64 nPc = EP.P.n_carrier;
  std::vector<std::pair<int, i64>> pts;
  std::vector<i64> idx(static_cast<size_t>(S.X.n_objects) * nPc, -1);
  for (int x = 0; x < S.X.n_objects; ++x)
    for (i64 p = 0; p < nPc; ++p)
      if (EP.P.anchor[p] == f.f0[x]) {
        idx[x * nPc + p] = static_cast<i64>(pts.size());
        pts.emplace_back(x, p);
      }
  if (static_cast<i64>(pts.size()) != PP.n_carrier)
    fail(ValidationError::Code::InvalidInput, {},
         "internal: pullback carrier enumeration mismatch");
  for (i64 k = 0; k < PP.n_carrier; ++k)
    if (PP.anchor[k] != pts[k].first)
      fail(ValidationError::Code::InvalidInput, {k},
           "internal: pullback carrier order mismatch");
  EquivariantTorsor EPs;
  EPs.P = std::move(PP);
  EPs.base_act = EP.base_act;
  EPs.carrier_act.assign(nG, std::vector<i64>(EPs.P.n_carrier));
  for (int g = 0; g < nG; ++g)
    for (i64 k = 0; k < EPs.P.n_carrier; ++k) {
      auto [x, p] = pts[k];
      EPs.carrier_act[g][k] =
          idx[static_cast<i64>(S.obj_act[g][x]) * nPc + EP.carrier_act[g][p]];
    }
  int x0 = -1;
  for (int x = 0; x < S.X.n_objects && x0 < 0; ++x)
    if (f.f0[x] == EP.P.anchor[EP.basepoint]) x0 = x;
  EPs.basepoint = idx[static_cast<i64>(x0) * nPc + EP.basepoint];

  TransportReport R;
  R.target_cocycle = cocycle_from_torsor(ctx, T, EP);
  R.pulled_cocycle = cocycle_from_torsor(ctx, S, EPs);
  R.equal = R.target_cocycle == R.pulled_cocycle;
  return R;
}

EquivariantBundle equivariant_baer_sum(const GaloisContext& ctx, const EquivariantBundle& a,
                                       const EquivariantBundle& b) {
  EquivariantBundle A2 = a, B2 = b;
  ensure_compatible_family(ctx, A2.X);
  ensure_compatible_family(ctx, B2.X);
  validate_descent_hypotheses(ctx, A2.X, A2.P);
  validate_descent_hypotheses(ctx, B2.X, B2.P);
  if (A2.P.base_act != B2.P.base_act)
    fail(ValidationError::Code::IncompatibleBases, {}, "summands act differently on the base");
  const BaerSum S = baer_sum(BaerBundle{A2.X.X, *A2.X.fam, A2.P.P},
                             BaerBundle{B2.X.X, *B2.X.fam, B2.P.P});
  const int nG = ctx.coeff.G.order;
  const int nY0 = B2.X.X.n_objects;
  const i64 nY1 = B2.X.X.n_arrows;
  const i64 nQc = B2.P.P.n_carrier;

  EquivariantBundle out;
  out.X.X = S.bundle.X;
  out.X.gal = ctx.coeff.G;
  out.X.fam = S.bundle.fam;
  out.X.obj_act.assign(nG, std::vector<int>(S.bundle.X.n_objects));
  out.X.arr_act.assign(nG, std::vector<int>(S.bundle.X.n_arrows));
  out.P.P = S.bundle.P;
  out.P.base_act = A2.P.base_act;
  out.P.carrier_act.assign(nG, std::vector<i64>(S.bundle.P.n_carrier));
  for (int g = 0; g < nG; ++g) {
    for (int x = 0; x < A2.X.X.n_objects; ++x)
      for (int y = 0; y < nY0; ++y)
        out.X.obj_act[g][x * nY0 + y] = A2.X.obj_act[g][x] * nY0 + B2.X.obj_act[g][y];
    for (int z = 0; z < S.bundle.X.n_arrows; ++z) {
      auto [m, n] = S.arrow_rep[z];
      out.X.arr_act[g][z] =
          S.arrow_class[static_cast<i64>(A2.X.arr_act[g][m]) * nY1 + B2.X.arr_act[g][n]];
    }
    for (i64 r = 0; r < S.bundle.P.n_carrier; ++r) {
      auto [p, q] = S.point_rep[r];
      const i64 img =
          S.point_class[A2.P.carrier_act[g][p] * nQc + B2.P.carrier_act[g][q]];
      if (img < 0)
        fail(ValidationError::Code::InvalidInput, {g, r},
             "internal: carrier lift left the matched pairs");
      out.P.carrier_act[g][r] = img;
    }
  }
  const i64 s0 = A2.P.P.proj[A2.P.basepoint];
  i64 q0 = B2.P.basepoint;
  if (B2.P.P.proj[q0] != s0) {
    q0 = -1;
    for (i64 q = 0; q < nQc && q0 < 0; ++q)
      if (B2.P.P.proj[q] == s0) q0 = q;
  }
  out.P.basepoint = S.point_class[A2.P.basepoint * nQc + q0];
  validate_descent_hypotheses(ctx, out.X, out.P);
  return out;
}

EquivariantBundle equivariant_trivial_bundle(const GaloisContext& ctx, i64 n_base) {
  const BaerBundle T = trivial_bundle(ctx.coeff.A, n_base);
  const int nG = ctx.coeff.G.order;
  const i64 nA = ctx.coeff.A.order;
  EquivariantBundle out;
  out.X.X = T.X;
  out.X.gal = ctx.coeff.G;
  out.X.fam = T.fam;
  out.X.obj_act.assign(nG, std::vector<int>(1, 0));
  out.X.arr_act.assign(nG, std::vector<int>(nA));
  out.P.P = T.P;
  out.P.base_act.assign(nG, std::vector<i64>(n_base));
  out.P.carrier_act.assign(nG, std::vector<i64>(T.P.n_carrier));
  out.P.basepoint = 0;
  for (int g = 0; g < nG; ++g) {
    for (i64 aa = 0; aa < nA; ++aa)
      out.X.arr_act[g][aa] = static_cast<int>(ctx.coeff.act(g, aa));
    std::iota(out.P.base_act[g].begin(), out.P.base_act[g].end(), i64{0});
    for (i64 s = 0; s < n_base; ++s)
      for (i64 aa = 0; aa < nA; ++aa)
        out.P.carrier_act[g][s * nA + aa] = s * nA + ctx.coeff.act(g, aa);
  }
  validate_equivariant_groupoid(ctx, out.X);
  validate_equivariant_torsor(ctx, out.X, out.P);
  return out;
}

}  // namespace gclab
