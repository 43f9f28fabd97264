#include "gclab/quantum.hpp"

#include <numeric>
#include <set>

#include "gclab/caps.hpp"
#include "gclab/cohomology.hpp"

namespace gclab {

namespace {

i64 mod_p(i64 x, i64 p) {
  i64 r = x % p;
  return r < 0 ? r + p : r;
}

// Lowest power of the field generator with multiplicative order exactly n.
i64 primitive_root_of_unity(const FiniteField& F, int n) {
  for (i64 j = 0; j < F.q - 1; ++j) {
    i64 cand = F.pow(F.generator, j);
    if (F.unit_order(cand) == n) return cand;
  }
  fail(ValidationError::Code::BadCongruence, {n, F.p},
       "the unit group has no element of order n");
}

void check_lift_shape(const QuantumTorusData& data, const std::vector<FieldMatrix>& lifts) {
  int n = data.n;
  if (static_cast<int>(lifts.size()) != n * n)
    fail(ValidationError::Code::ShapeMismatch, {static_cast<i64>(lifts.size())},
         "lift table needs one matrix per deck element");
  for (int s = 0; s < n * n; ++s)
    if (lifts[s].n != n ||
        static_cast<int>(lifts[s].entries.size()) != n * n)
      fail(ValidationError::Code::ShapeMismatch, {s}, "lift matrix has the wrong size");
}

// Scalar discrepancy table without the final cocycle validation; the callers
// decide whether a non-cocycle table is a negative result (obstruction API)
// or a NotAssociative witness (splitting groupoid validation).
Cochain scalar_table(const QuantumTorusData& data, const std::vector<FieldMatrix>& lifts,
                     const DeckHook& hook) {
  check_lift_shape(data, lifts);
  const FiniteField& F = data.field;
  int n = data.n;
  GModule M = deck_module(n);
  int order = M.G.order;

  std::vector<FieldMatrix> inv(order);
  for (int s = 0; s < order; ++s) {
    auto mi = mat_inverse(F, lifts[s]);
    if (!mi)
      fail(ValidationError::Code::InvalidInput, {s}, "lift matrix is singular");
    inv[s] = *mi;
  }

  Cochain h = zero_cochain(M, 2);
  for (int s = 0; s < order; ++s)
    for (int t = 0; t < order; ++t) {
      FieldMatrix acted = hook ? hook(s, lifts[t]) : lifts[t];
      FieldMatrix prod = mat_mul(F, mat_mul(F, lifts[s], acted), inv[M.G.op(s, t)]);
      auto c = mat_scalar_of(prod);
      if (!c || *c == 0)
        negative(NegativeResult::Kind::NotScalar, {s, t},
                 "lift product is not a scalar matrix");
      if (F.pow(*c, n) != 1)
        negative(NegativeResult::Kind::NotScalar, {s, t, *c},
                 "lift product scalar lies outside mu_n");
      i64 dlog = -1;
      for (i64 e = 0; e < n; ++e)
        if (F.pow(data.zeta, e) == *c) {
          dlog = e;
          break;
        }
      if (dlog < 0)
        fail(ValidationError::Code::InvalidInput, {s, t, *c},
             "internal: mu_n scalar without a discrete log");
      h.values[static_cast<size_t>(s) * order + t] = dlog;
    }
  return h;
}

// Shared construction behind the three splitting_groupoid entry points.
SplittingGroupoid build_splitting(int n, const Cochain& table,
                                  std::vector<std::pair<i64, i64>> bases,
                                  std::vector<std::pair<i64, i64>> roots, i64 p,
                                  i64 zeta) {
  GModule M = deck_module(n);
  if (table.degree != 2)
    fail(ValidationError::Code::ShapeMismatch, {table.degree},
         "scalar table must be a degree-2 cochain");
  check_cochain_shape(M, table);

  int n_bases = bases.empty() ? 1 : static_cast<int>(bases.size());
  int fibre = n * n;
  int per_base = fibre * fibre * n;
  i64 total = static_cast<i64>(n_bases) * per_base;
  if (total > kGroupoidArrowCap)
    throw CapExceeded("splitting groupoid arrow count exceeds the groupoid arrow cap");

  SplittingGroupoid S;
  S.n = n;
  S.p = p;
  S.zeta = zeta;
  S.bases = std::move(bases);
  S.roots = std::move(roots);
  S.table = table;

  auto value = [&](int s, int t) {
    return table.values[static_cast<size_t>(s) * fibre + t];
  };
  auto deck_of = [&](int ly0, int ly1) {
    int i = ((ly1 / n - ly0 / n) % n + n) % n;
    int j = ((ly1 % n - ly0 % n) % n + n) % n;
    return i * n + j;
  };

  Groupoid X;
  X.n_objects = n_bases * fibre;
  X.n_arrows = static_cast<int>(total);
  X.src.resize(X.n_arrows);
  X.tgt.resize(X.n_arrows);
  X.inv.resize(X.n_arrows);
  X.id_of.resize(X.n_objects);
  X.table.assign(static_cast<size_t>(X.n_arrows) * X.n_arrows, -1);

  auto arrow_at = [&](int b, int ly0, int ly1, i64 c) {
    return ((b * fibre + ly0) * fibre + ly1) * n + static_cast<int>(c);
  };

  for (int b = 0; b < n_bases; ++b)
    for (int ly0 = 0; ly0 < fibre; ++ly0)
      for (int ly1 = 0; ly1 < fibre; ++ly1) {
        int gamma = deck_of(ly0, ly1);
        int ginv = M.G.inv(gamma);
        for (int c = 0; c < n; ++c) {
          int m = arrow_at(b, ly0, ly1, c);
          X.src[m] = b * fibre + ly0;
          X.tgt[m] = b * fibre + ly1;
          i64 cinv = mod_p(-c - value(gamma, ginv), n);
          X.inv[m] = arrow_at(b, ly1, ly0, cinv);
        }
      }
  for (int y = 0; y < X.n_objects; ++y)
    X.id_of[y] = arrow_at(y / fibre, y % fibre, y % fibre, 0);

  for (int b = 0; b < n_bases; ++b)
    for (int ly0 = 0; ly0 < fibre; ++ly0)
      for (int ly1 = 0; ly1 < fibre; ++ly1) {
        int gamma = deck_of(ly0, ly1);
        for (int ly2 = 0; ly2 < fibre; ++ly2) {
          int delta = deck_of(ly1, ly2);
          i64 twist = value(gamma, delta);
          for (int c1 = 0; c1 < n; ++c1) {
            int m1 = arrow_at(b, ly0, ly1, c1);
            for (int c2 = 0; c2 < n; ++c2) {
              int m2 = arrow_at(b, ly1, ly2, c2);
              X.table[static_cast<size_t>(m1) * X.n_arrows + m2] =
                  arrow_at(b, ly0, ly2, mod_p(c1 + c2 + twist, n));
            }
          }
        }
      }

  S.X = validate_groupoid(X);

  S.fam.A = group_from_cyclic_factors({n});
  S.fam.iso.resize(X.n_objects);
  for (int y = 0; y < X.n_objects; ++y) {
    S.fam.iso[y].resize(n);
    for (int c = 0; c < n; ++c)
      S.fam.iso[y][c] = arrow_at(y / fibre, y % fibre, y % fibre, c);
  }
  validate_bounding_family(S.X, S.fam);
  return S;
}

}  // namespace

FieldMatrix QuantumTorusData::u_at(i64 mu, i64 nu) const {
  (void)nu;
  return mat_scale(field, mu, g_alpha);
}

FieldMatrix QuantumTorusData::v_at(i64 mu, i64 nu) const {
  (void)mu;
  return mat_scale(field, nu, g_beta);
}

QuantumTorusData quantum_torus_data(int n, i64 p) {
  if (n < 1) fail(ValidationError::Code::InvalidInput, {n}, "rank must be at least 1");
  QuantumTorusData data;
  data.n = n;
  data.p = p;
  data.field = finite_field(p, 1);
  if ((p - 1) % n != 0)
    fail(ValidationError::Code::BadCongruence, {n, p},
         "need p = 1 mod n so that mu_n lies in F_p");
  data.zeta = primitive_root_of_unity(data.field, n);

  const FiniteField& F = data.field;
  data.g_alpha.n = n;
  data.g_alpha.entries.assign(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) data.g_alpha.at(i, i) = F.pow(data.zeta, i);
  data.g_beta.n = n;
  data.g_beta.entries.assign(static_cast<size_t>(n) * n, 0);
  for (int c = 0; c < n; ++c) data.g_beta.at((c + 1) % n, c) = 1;

  FieldMatrix ab = mat_mul(F, data.g_alpha, data.g_beta);
  FieldMatrix ba = mat_mul(F, data.g_beta, data.g_alpha);
  if (ab != mat_scale(F, data.zeta, ba))
    fail(ValidationError::Code::InvalidInput, {n, p},
         "generator matrices fail the commutation identity");
  if (mat_pow(F, data.g_alpha, n) != mat_identity(n) ||
      mat_pow(F, data.g_beta, n) != mat_identity(n))
    fail(ValidationError::Code::InvalidInput, {n, p},
         "generator matrices are not n-torsion");
  for (i64 mu = 1; mu < p; ++mu)
    for (i64 nu = 1; nu < p; ++nu) {
      FieldMatrix u = data.u_at(mu, nu), v = data.v_at(mu, nu);
      if (mat_mul(F, u, v) != mat_scale(F, data.zeta, mat_mul(F, v, u)))
        fail(ValidationError::Code::InvalidInput, {mu, nu},
             "uv = zeta vu fails at a point");
    }
  return data;
}

FiniteGroup deck_group(int n) {
  return group_from_cyclic_factors({n, n}).to_group();
}

GModule deck_module(int n) {
  return trivial_gmodule(deck_group(n), group_from_cyclic_factors({n}));
}

std::vector<FieldMatrix> normal_form_lifts(const QuantumTorusData& data) {
  int n = data.n;
  std::vector<FieldMatrix> lifts;
  lifts.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    FieldMatrix ai = mat_pow(data.field, data.g_alpha, i);
    for (int j = 0; j < n; ++j)
      lifts.push_back(mat_mul(data.field, ai, mat_pow(data.field, data.g_beta, j)));
  }
  return lifts;
}

Cochain pgl_obstruction_cocycle(const QuantumTorusData& data,
                                const std::vector<FieldMatrix>& lifts,
                                const DeckHook& hook) {
  Cochain h = scalar_table(data, lifts, hook);
  GModule M = deck_module(data.n);
  std::vector<i64> witness;
  if (!is_cocycle(M, h, &witness))
    negative(NegativeResult::Kind::NotACocycle, witness,
             "scalar table fails the cocycle identity");
  return h;
}

Cochain pgl_obstruction_cocycle(const QuantumTorusData& data) {
  return pgl_obstruction_cocycle(data, normal_form_lifts(data), {});
}

HeisenbergData heisenberg_extension(int n) {
  if (n < 1) fail(ValidationError::Code::InvalidInput, {n}, "rank must be at least 1");
  if (n > 5)
    throw CapExceeded("heisenberg rank " + std::to_string(n) +
                      " exceeds the desk-scale cap 5");
  i64 p = 2;
  while (!is_prime(p) || (p - 1) % n != 0) ++p;

  HeisenbergData out;
  out.n = n;
  out.p = p;
  out.module = deck_module(n);
  out.cocycle = pgl_obstruction_cocycle(quantum_torus_data(n, p));
  out.ext = extension_from_cocycle(out.module, out.cocycle);
  return out;
}

int SplittingGroupoid::object_index(int base, int imu, int inu) const {
  return base * n * n + imu * n + inu;
}

int SplittingGroupoid::arrow_index(int y0, int y1, i64 c) const {
  int fibre = n * n;
  return (y0 * fibre + y1 % fibre) * n + static_cast<int>(c);
}

SplittingGroupoid splitting_groupoid(const QuantumTorusData& data,
                                     const std::vector<FieldMatrix>& lifts,
                                     const std::vector<std::pair<i64, i64>>& bases,
                                     const DeckHook& hook) {
  if (bases.empty())
    fail(ValidationError::Code::InvalidInput, {}, "need at least one base point");
  const FiniteField& F = data.field;
  std::vector<std::pair<i64, i64>> roots;
  for (const auto& [x, y] : bases) {
    if (x <= 0 || x >= data.p || y <= 0 || y >= data.p)
      fail(ValidationError::Code::InvalidInput, {x, y},
           "base point must lie in (F_p^x)^2");
    i64 mu0 = 0, nu0 = 0;
    for (i64 m = 1; m < data.p && mu0 == 0; ++m)
      if (F.pow(m, data.n) == x) mu0 = m;
    for (i64 m = 1; m < data.p && nu0 == 0; ++m)
      if (F.pow(m, data.n) == y) nu0 = m;
    if (mu0 == 0 || nu0 == 0)
      fail(ValidationError::Code::InvalidInput, {x, y},
           "base point has an empty fibre: both coordinates must be n-th powers");
    roots.emplace_back(mu0, nu0);
  }
  Cochain table = scalar_table(data, lifts, hook);
  return build_splitting(data.n, table, bases, std::move(roots), data.p, data.zeta);
}

SplittingGroupoid splitting_groupoid(const QuantumTorusData& data) {
  return splitting_groupoid(data, normal_form_lifts(data), {{1, 1}}, {});
}

SplittingGroupoid splitting_groupoid_from_table(int n, const Cochain& table) {
  if (n < 1) fail(ValidationError::Code::InvalidInput, {n}, "rank must be at least 1");
  return build_splitting(n, table, {}, {}, 0, 0);
}

EquivariantGroupoid splitting_equivariant(const SplittingGroupoid& S) {
  int n = S.n;
  int fibre = n * n;
  if (S.X.n_objects != fibre)
    fail(ValidationError::Code::HypothesisFailed, {S.X.n_objects},
         "equivariant wrapper needs a single-fibre splitting groupoid");

  EquivariantGroupoid EX;
  EX.X = S.X;
  EX.gal = deck_group(n);
  EX.obj_act.assign(fibre, std::vector<int>(fibre));
  EX.arr_act.assign(fibre, std::vector<int>(S.X.n_arrows));
  auto translate = [&](int gamma, int ly) {
    int i = (ly / n + gamma / n) % n;
    int j = (ly % n + gamma % n) % n;
    return i * n + j;
  };
  for (int gamma = 0; gamma < fibre; ++gamma) {
    for (int ly = 0; ly < fibre; ++ly) EX.obj_act[gamma][ly] = translate(gamma, ly);
    for (int m = 0; m < S.X.n_arrows; ++m) {
      int ly0 = S.X.src[m], ly1 = S.X.tgt[m];
      i64 c = m % n;
      EX.arr_act[gamma][m] =
          S.arrow_index(translate(gamma, ly0), translate(gamma, ly1), c);
    }
  }
  EX.fam = S.fam;

  GaloisContext ctx{deck_module(n)};
  validate_equivariant_groupoid(ctx, EX);
  return EX;
}

CyclicAlgebraReport cyclic_algebra_split(i64 p, int n, i64 a, i64 b) {
  if (n < 1) fail(ValidationError::Code::InvalidInput, {n}, "degree must be at least 1");
  FiniteField base = finite_field(p, 1);
  if ((p - 1) % n != 0)
    fail(ValidationError::Code::BadCongruence, {n, p},
         "need p = 1 mod n so that mu_n lies in F_p");
  if (a <= 0 || a >= p || b <= 0 || b >= p)
    fail(ValidationError::Code::InvalidInput, {a, b},
         "the symbol entries must lie in F_p^x");

  CyclicAlgebraReport report;
  report.p = p;
  report.n = n;
  report.a = a;
  report.b = b;

  std::vector<i64> kummer(n + 1, 0);
  kummer[0] = mod_p(-a, p);
  kummer[n] = 1;
  if (!polynomial_irreducible(p, kummer)) {
    report.split = true;
    report.degenerate = true;
    return report;
  }

  FiniteField K = finite_field(p, n, kummer);
  i64 zeta = primitive_root_of_unity(base, n);

  // sigma fixes F_p and sends the Kummer root to zeta times itself.
  auto sigma = [&](i64 e) {
    std::vector<i64> d = K.coeffs(e);
    i64 zpow = 1;
    for (int i = 0; i < n; ++i) {
      d[i] = mod_p(d[i] * zpow, p);
      zpow = mod_p(zpow * zeta, p);
    }
    return K.pack(d);
  };
  auto norm = [&](i64 e) {
    i64 acc = 1, cur = e;
    for (int i = 0; i < n; ++i) {
      acc = K.mul(acc, cur);
      cur = sigma(cur);
    }
    std::vector<i64> d = K.coeffs(acc);
    for (int i = 1; i < n; ++i)
      if (d[i] != 0)
        fail(ValidationError::Code::InvalidInput, {e},
             "internal: norm value left the base field");
    return d[0];
  };

  for (i64 e = 1; e < K.q; ++e)
    if (norm(e) == b) {
      report.split = true;
      report.witness = e;
      report.witness_coeffs = K.coeffs(e);
      return report;
    }
  negative(NegativeResult::Kind::NotSplit, {p, n, a, b},
           "no element of the Kummer extension has the requested norm");
}

i64 power_class_count(i64 p, int n) {
  if (n < 1) fail(ValidationError::Code::InvalidInput, {n}, "exponent must be at least 1");
  FiniteField F = finite_field(p, 1);
  std::set<i64> powers;
  for (i64 x = 1; x < p; ++x) powers.insert(F.pow(x, n));
  return (p - 1) / static_cast<i64>(powers.size());
}

KummerReport kummer_h1_check(i64 p, int n) {
  KummerReport report;
  report.p = p;
  report.n = n;
  report.power_classes = power_class_count(p, n);
  if ((p - 1) % n != 0)
    fail(ValidationError::Code::BadCongruence, {n, p},
         "the clean finite comparison needs n | p - 1");
  GModule M = trivial_gmodule(cyclic_group(n), group_from_cyclic_factors({n}));
  report.h1_order = cohomology_group(M, 1).order();
  report.gcd_value = std::gcd(static_cast<i64>(n), p - 1);
  report.classes_match_gcd = report.power_classes == report.gcd_value;
  report.matches_h1 = report.power_classes == report.h1_order;
  return report;
}

}  // namespace gclab
