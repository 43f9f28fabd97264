#include "gclab/cohomology.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gclab/caps.hpp"
#include "gclab/smith.hpp"

namespace gclab {

namespace {

// Flat integer coordinates: position-major, coefficient coordinate minor.
std::vector<i64> lift_cochain(const GModule& M, const Cochain& c) {
  const size_t k = M.A.moduli.size();
  std::vector<i64> out(c.values.size() * k);
  for (size_t p = 0; p < c.values.size(); ++p) {
    std::vector<i64> t = M.A.tuple(c.values[p]);
    for (size_t j = 0; j < k; ++j) out[p * k + j] = t[j];
  }
  return out;
}

Cochain unlift_cochain(const GModule& M, int degree, const std::vector<i64>& flat) {
  const size_t k = M.A.moduli.size();
  Cochain c = zero_cochain(M, degree);
  for (size_t p = 0; p < c.values.size(); ++p) {
    std::vector<i64> t(k);
    for (size_t j = 0; j < k; ++j) t[j] = flat[p * k + j];
    c.values[p] = M.A.index_of(t);
  }
  return c;
}

std::vector<i64> flat_moduli(const GModule& M, int degree) {
  i64 positions = cochain_positions(M, degree);
  std::vector<i64> m;
  m.reserve(positions * M.A.moduli.size());
  for (i64 p = 0; p < positions; ++p)
    for (i64 mod : M.A.moduli) m.push_back(mod);
  return m;
}

// k x k integer lift of the action of g (columns are images of the unit
// residues); reduces correctly modulo the coefficient moduli.
Mat action_lift(const GModule& M, int g) {
  const int k = static_cast<int>(M.A.moduli.size());
  Mat L(k, k);
  for (int j = 0; j < k; ++j) {
    std::vector<i64> unit(k, 0);
    unit[j] = 1 % M.A.moduli[j];
    i64 img = M.act(g, M.A.index_of(unit));
    std::vector<i64> t = M.A.tuple(img);
    for (int r = 0; r < k; ++r) L.at(r, j) = t[r];
  }
  return L;
}

// Integer matrix of the degree-n differential on flat coordinates.
Mat differential_matrix(const GModule& M, int n) {
  const int q = M.G.order;
  const int k = static_cast<int>(M.A.moduli.size());
  const i64 in_pos = cochain_positions(M, n);
  const i64 out_pos = cochain_positions(M, n + 1);
  Mat F(static_cast<int>(out_pos * k), static_cast<int>(in_pos * k));
  std::vector<Mat> lifts(q);
  for (int g = 0; g < q; ++g) lifts[g] = action_lift(M, g);

  std::vector<int> g(n + 1, 0);
  i64 row_block = 0;
  while (true) {
    auto add_block = [&](i64 col_block, int sign, const Mat* L) {
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) {
          i64 v = L ? L->at(r, c) : (r == c ? 1 : 0);
          F.at(static_cast<int>(row_block * k + r), static_cast<int>(col_block * k + c)) =
              checked_add(F.at(static_cast<int>(row_block * k + r),
                               static_cast<int>(col_block * k + c)),
                          sign * v);
        }
    };
    {
      i64 sub = 0;
      for (int i = 1; i <= n; ++i) sub = sub * q + g[i];
      add_block(sub, +1, &lifts[g[0]]);
    }
    int sign = -1;
    for (int i = 1; i <= n; ++i) {
      i64 sub = 0;
      for (int j = 0; j <= n; ++j) {
        if (j == i - 1) {
          sub = sub * q + M.G.op(g[i - 1], g[i]);
          ++j;
        } else {
          sub = sub * q + g[j];
        }
      }
      add_block(sub, sign, nullptr);
      sign = -sign;
    }
    {
      i64 sub = 0;
      for (int i = 0; i < n; ++i) sub = sub * q + g[i];
      add_block(sub, sign, nullptr);
    }

    ++row_block;
    int i = n;
    while (i >= 0 && ++g[i] == q) {
      g[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return F;
}

Mat diag_matrix(const std::vector<i64>& m) {
  Mat d(static_cast<int>(m.size()), static_cast<int>(m.size()));
  for (size_t i = 0; i < m.size(); ++i) d.at(static_cast<int>(i), static_cast<int>(i)) = m[i];
  return d;
}

Mat hcat(const Mat& a, const Mat& b) {
  if (a.rows != b.rows)
    fail(ValidationError::Code::ShapeMismatch, {a.rows, b.rows}, "hcat rows");
  Mat r(a.rows, a.cols + b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) r.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols; ++j) r.at(i, a.cols + j) = b.at(i, j);
  }
  return r;
}

Cochain cochain_smul(const GModule& M, i64 s, const Cochain& c) {
  Cochain r = c;
  for (auto& v : r.values) v = M.A.smul(s, v);
  return r;
}

void require_same_module(const GModule& a, const GModule& b) {
  if (!a.same_shape(b))
    fail(ValidationError::Code::ModuleMismatch, {}, "operands use different modules");
}

constexpr i64 kSnfDimensionCap = 1024;

}  // namespace

i64 CohomologyGroup::order() const {
  i64 n = 1;
  for (i64 d : invariant_factors) n = checked_mul(n, d);
  return n;
}

bool CohomologyGroup::trivial_class(const Cochain& z) const {
  for (i64 c : class_of(z))
    if (c != 0) return false;
  return true;
}

Cochain CohomologyGroup::representative(const std::vector<i64>& coords) const {
  if (coords.size() != invariant_factors.size())
    fail(ValidationError::Code::ShapeMismatch, {static_cast<i64>(coords.size())},
         "coordinate count mismatch");
  Cochain acc = zero_cochain(M, degree);
  for (size_t i = 0; i < coords.size(); ++i)
    acc = cochain_add(M, acc, cochain_smul(M, coords[i], generators[i]));
  return acc;
}

CohomologyGroup cohomology_group(const GModule& M, int degree) {
  if (degree != 1 && degree != 2)
    fail(ValidationError::Code::InvalidInput, {degree},
         "cohomology_group supports degrees 1 and 2");
  const int k = static_cast<int>(M.A.moduli.size());
  const i64 N = cochain_positions(M, degree) * k;
  const i64 Nnext = cochain_positions(M, degree + 1) * k;
  if (Nnext > kSnfDimensionCap)
    throw CapExceeded("cohomology: lifted cochain dimension " + std::to_string(Nnext) +
                      " exceeds the linear-algebra cap " + std::to_string(kSnfDimensionCap));

  // Cocycle lattice K = { x : F x = 0 mod next moduli }, as the projection of
  // the kernel of [F | diag(next moduli)].
  Mat F = differential_matrix(M, degree);
  Mat big = hcat(F, diag_matrix(flat_moduli(M, degree + 1)));
  Mat ker = kernel_basis(big);
  Mat kproj(static_cast<int>(N), ker.cols);
  for (int r = 0; r < kproj.rows; ++r)
    for (int c = 0; c < ker.cols; ++c) kproj.at(r, c) = ker.at(r, c);
  Mat BK = column_lattice_basis(kproj);
  if (BK.cols != N)
    fail(ValidationError::Code::InvalidInput, {BK.cols, N},
         "internal: cocycle lattice is not full rank");

  // Coboundary-plus-moduli lattice I, expressed in the K basis.
  Mat Fprev = differential_matrix(M, degree - 1);
  Mat igens = hcat(Fprev, diag_matrix(flat_moduli(M, degree)));
  auto solveK = std::make_shared<IntSolver>(BK);
  Mat C(static_cast<int>(N), igens.cols);
  for (int j = 0; j < igens.cols; ++j) {
    std::vector<i64> col(igens.rows);
    for (int r = 0; r < igens.rows; ++r) col[r] = igens.at(r, j);
    auto s = solveK->solve(col);
    if (!s)
      fail(ValidationError::Code::InvalidInput, {j},
           "internal: coboundary outside the cocycle lattice");
    for (int r = 0; r < C.rows; ++r) C.at(r, j) = (*s)[r];
  }
  Smith sc = smith_normal_form(std::move(C));
  if (sc.rank != N)
    fail(ValidationError::Code::InvalidInput, {sc.rank, N},
         "internal: coboundary lattice is not finite index");

  auto UC = std::make_shared<Mat>(sc.U);
  auto dall = std::make_shared<std::vector<i64>>();
  for (i64 i = 0; i < N; ++i) dall->push_back(sc.d(static_cast<int>(i)));
  auto retained = std::make_shared<std::vector<int>>();
  for (i64 i = 0; i < N; ++i)
    if ((*dall)[i] != 1) retained->push_back(static_cast<int>(i));

  CohomologyGroup H;
  H.degree = degree;
  H.M = M;
  for (int i : *retained) H.invariant_factors.push_back((*dall)[i]);
  for (int i : *retained) {
    std::vector<i64> gen(N);
    for (i64 r = 0; r < N; ++r) {
      i64 acc = 0;
      for (i64 t = 0; t < N; ++t)
        acc = checked_add(acc, checked_mul(BK.at(static_cast<int>(r), static_cast<int>(t)),
                                           sc.Ui.at(static_cast<int>(t), i)));
      gen[r] = acc;
    }
    H.generators.push_back(unlift_cochain(M, degree, gen));
  }

  GModule Mcopy = M;
  int deg = degree;
  H.class_of_fn = [Mcopy, deg, solveK, UC, dall, retained](const Cochain& z) {
    check_cochain_shape(Mcopy, z);
    if (z.degree != deg)
      fail(ValidationError::Code::ModuleMismatch, {z.degree, deg}, "degree mismatch");
    std::vector<i64> w;
    if (!is_cocycle(Mcopy, z, &w))
      negative(NegativeResult::Kind::NotACocycle, w, "class_of input fails the cocycle identity");
    auto s = solveK->solve(lift_cochain(Mcopy, z));
    if (!s)
      fail(ValidationError::Code::InvalidInput, {},
           "internal: cocycle outside the cocycle lattice");
    std::vector<i64> ws = mat_apply(*UC, *s);
    std::vector<i64> coords;
    for (int i : *retained) {
      i64 d = (*dall)[i];
      coords.push_back(((ws[i] % d) + d) % d);
    }
    return coords;
  };
  return H;
}

namespace {

// Greedy cyclic decomposition of an abstract finite abelian group given by an
// addition function on ids 0..n-1 with identity 0. Returns factors in
// ascending divisibility and per-id coordinates; verified to be a bijection.
struct AbstractDecomposition {
  std::vector<i64> factors;
  std::vector<int> generators;
  std::map<int, std::vector<i64>> coords;
};

AbstractDecomposition decompose_abstract(int n, const std::function<int(int, int)>& add) {
  auto order_from = [&](int x, const std::set<int>& H) {
    int y = x;
    i64 k = 1;
    while (!H.count(y)) {
      y = add(y, x);
      ++k;
    }
    return k;
  };
  auto plain_order = [&](int x) {
    int y = x;
    i64 k = 1;
    while (y != 0) {
      y = add(y, x);
      ++k;
    }
    return k;
  };
  std::vector<int> gens_desc;
  std::vector<i64> factors_desc;
  std::set<int> H = {0};
  while (static_cast<int>(H.size()) < n) {
    i64 best = 0;
    for (int x = 0; x < n; ++x) best = std::max(best, order_from(x, H));
    int pick = -1;
    for (int x = 0; x < n && pick < 0; ++x) {
      if (order_from(x, H) != best) continue;
      pick = x;
      for (int h : H) {
        int cand = add(x, h);
        if (plain_order(cand) == best) {
          pick = cand;
          break;
        }
      }
    }
    gens_desc.push_back(pick);
    factors_desc.push_back(best);
    std::set<int> grown = {0};
    std::vector<int> stack = {0};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int g : gens_desc) {
        int y = add(x, g);
        if (grown.insert(y).second) stack.push_back(y);
      }
    }
    H = std::move(grown);
  }

  AbstractDecomposition out;
  out.factors.assign(factors_desc.rbegin(), factors_desc.rend());
  out.generators.assign(gens_desc.rbegin(), gens_desc.rend());
  // Enumerate coordinate tuples and record each id's coordinates.
  std::vector<i64> t(out.factors.size(), 0);
  while (true) {
    int x = 0;
    for (size_t i = 0; i < t.size(); ++i)
      for (i64 rep = 0; rep < t[i]; ++rep) x = add(x, out.generators[i]);
    if (!out.coords.emplace(x, t).second)
      fail(ValidationError::Code::InvalidInput, {x},
           "internal: abstract decomposition is not a direct sum");
    size_t i = t.size();
    bool done = true;
    while (i-- > 0) {
      if (++t[i] < out.factors[i]) {
        done = false;
        break;
      }
      t[i] = 0;
    }
    if (done || t.empty()) break;
  }
  if (static_cast<int>(out.coords.size()) != n)
    fail(ValidationError::Code::InvalidInput, {static_cast<i64>(out.coords.size()), n},
         "internal: abstract decomposition misses classes");
  return out;
}

}  // namespace

CohomologyGroup cohomology_group_enumerative(const GModule& M, int degree) {
  if (degree != 1 && degree != 2)
    fail(ValidationError::Code::InvalidInput, {degree},
         "cohomology_group supports degrees 1 and 2");
  const int q = M.G.order;
  const int e = M.G.identity;

  // Free positions of a normalized cochain (no coordinate equal to e).
  std::vector<i64> free_pos;
  if (degree == 1) {
    for (int s = 0; s < q; ++s)
      if (s != e) free_pos.push_back(s);
  } else {
    for (int s = 0; s < q; ++s)
      for (int t = 0; t < q; ++t)
        if (s != e && t != e) free_pos.push_back(static_cast<i64>(s) * q + t);
  }
  i64 budget = 1;
  for (size_t i = 0; i < free_pos.size() && budget <= kHardEnumerationCap; ++i)
    budget *= M.A.order;
  check_enumeration_budget(budget, "cohomology enumeration");

  // Normalized coboundaries: images of normalized (degree-1) or arbitrary
  // (degree-0) cochains under the differential.
  std::set<std::vector<i64>> boundaries;
  if (degree == 1) {
    for (i64 a = 0; a < M.A.order; ++a) {
      Cochain c{0, {a}};
      boundaries.insert(differential(M, c).values);
    }
  } else {
    std::vector<i64> assign(q - 1, 0);
    while (true) {
      Cochain g = zero_cochain(M, 1);
      int slot = 0;
      for (int s = 0; s < q; ++s)
        if (s != e) g.values[s] = assign[slot++];
      boundaries.insert(differential(M, g).values);
      int i = q - 2;
      while (i >= 0 && ++assign[i] == M.A.order) {
        assign[i] = 0;
        --i;
      }
      if (i < 0 || q == 1) break;
    }
  }

  auto canon = [&](const std::vector<i64>& z) {
    std::vector<i64> best;
    std::vector<i64> sum(z.size());
    bool first = true;
    for (const auto& b : boundaries) {
      for (size_t i = 0; i < z.size(); ++i) sum[i] = M.A.add(z[i], b[i]);
      if (first || sum < best) {
        best = sum;
        first = false;
      }
    }
    return best;
  };

  // Enumerate normalized cocycles and canonicalize into classes.
  std::set<std::vector<i64>> canon_forms;
  {
    std::vector<i64> assign(free_pos.size(), 0);
    while (true) {
      Cochain h = zero_cochain(M, degree);
      for (size_t i = 0; i < free_pos.size(); ++i) h.values[free_pos[i]] = assign[i];
      bool ok = is_cocycle(M, h, nullptr);
      if (ok) canon_forms.insert(canon(h.values));
      if (free_pos.empty()) break;
      size_t i = free_pos.size();
      bool done = true;
      while (i-- > 0) {
        if (++assign[i] < M.A.order) {
          done = false;
          break;
        }
        assign[i] = 0;
      }
      if (done) break;
    }
  }

  std::vector<std::vector<i64>> reps(canon_forms.begin(), canon_forms.end());
  std::map<std::vector<i64>, int> id_of;
  for (size_t i = 0; i < reps.size(); ++i) id_of[reps[i]] = static_cast<int>(i);
  auto add_ids = [&](int x, int y) {
    std::vector<i64> sum(reps[x].size());
    for (size_t i = 0; i < sum.size(); ++i) sum[i] = M.A.add(reps[x][i], reps[y][i]);
    return id_of.at(canon(sum));
  };
  AbstractDecomposition dec = decompose_abstract(static_cast<int>(reps.size()), add_ids);

  CohomologyGroup H;
  H.degree = degree;
  H.M = M;
  std::vector<int> retained;
  for (size_t i = 0; i < dec.factors.size(); ++i)
    if (dec.factors[i] != 1) retained.push_back(static_cast<int>(i));
  for (int i : retained) H.invariant_factors.push_back(dec.factors[i]);
  for (int i : retained)
    H.generators.push_back(Cochain{degree, reps[dec.generators[i]]});

  GModule Mcopy = M;
  auto reps_p = std::make_shared<std::vector<std::vector<i64>>>(std::move(reps));
  auto id_p = std::make_shared<std::map<std::vector<i64>, int>>(std::move(id_of));
  auto bound_p = std::make_shared<std::set<std::vector<i64>>>(std::move(boundaries));
  auto coords_p = std::make_shared<std::map<int, std::vector<i64>>>(std::move(dec.coords));
  auto retained_p = std::make_shared<std::vector<int>>(std::move(retained));
  int deg = degree;
  H.class_of_fn = [Mcopy, deg, reps_p, id_p, bound_p, coords_p, retained_p](const Cochain& z) {
    check_cochain_shape(Mcopy, z);
    if (z.degree != deg)
      fail(ValidationError::Code::ModuleMismatch, {z.degree, deg}, "degree mismatch");
    std::vector<i64> w;
    if (!is_cocycle(Mcopy, z, &w))
      negative(NegativeResult::Kind::NotACocycle, w, "class_of input fails the cocycle identity");
    Cochain zn = deg == 2 ? normalize(Mcopy, z) : z;
    std::vector<i64> best;
    std::vector<i64> sum(zn.values.size());
    bool first = true;
    for (const auto& b : *bound_p) {
      for (size_t i = 0; i < sum.size(); ++i) sum[i] = Mcopy.A.add(zn.values[i], b[i]);
      if (first || sum < best) {
        best = sum;
        first = false;
      }
    }
    auto it = id_p->find(best);
    if (it == id_p->end())
      fail(ValidationError::Code::InvalidInput, {}, "internal: class lookup failed");
    const std::vector<i64>& full = coords_p->at(it->second);
    std::vector<i64> coords;
    for (int i : *retained_p) coords.push_back(full[i]);
    return coords;
  };
  return H;
}

std::optional<Cochain> cohomologous(const GModule& M, const Cochain& h1, const Cochain& h2) {
  check_cochain_shape(M, h1);
  check_cochain_shape(M, h2);
  if (h1.degree != h2.degree || h1.degree < 1)
    fail(ValidationError::Code::ModuleMismatch, {h1.degree, h2.degree},
         "cohomologous expects equal degrees >= 1");
  const int n = h1.degree;
  const int k = static_cast<int>(M.A.moduli.size());
  Cochain diff = cochain_sub(M, h1, h2);
  Mat Fprev = differential_matrix(M, n - 1);
  Mat sys = hcat(Fprev, diag_matrix(flat_moduli(M, n)));
  IntSolver solver(std::move(sys));
  auto sol = solver.solve(lift_cochain(M, diff));
  if (!sol) return std::nullopt;
  const i64 Nprev = cochain_positions(M, n - 1) * k;
  std::vector<i64> flat(sol->begin(), sol->begin() + Nprev);
  Cochain g = unlift_cochain(M, n - 1, flat);
  return g;
}

SubgroupEmbedding full_embedding(const AbelianGroup& A) {
  SubgroupEmbedding emb;
  emb.sub = A;
  emb.include.resize(A.order);
  emb.elements.resize(A.order);
  for (i64 a = 0; a < A.order; ++a) {
    emb.include[a] = a;
    emb.elements[a] = a;
  }
  for (size_t i = 0; i < A.moduli.size(); ++i) {
    std::vector<i64> unit(A.moduli.size(), 0);
    unit[i] = 1 % A.moduli[i];
    emb.generators.push_back(A.index_of(unit));
  }
  return emb;
}

Cochain inflation(const GModule& M, const GroupHom& q, const GModule& MQ,
                  const SubgroupEmbedding& emb, const Cochain& beta) {
  if (!(q.source == M.G))
    fail(ValidationError::Code::ModuleMismatch, {}, "quotient map source is not the module group");
  if (!(q.target == MQ.G))
    fail(ValidationError::Code::ModuleMismatch, {}, "quotient map target is not beta's group");
  if (!hom_surjective(q))
    fail(ValidationError::Code::NotSurjective, {}, "quotient map must be surjective");
  if (emb.sub.moduli != MQ.A.moduli)
    fail(ValidationError::Code::CoefficientMismatch, {},
         "beta's coefficients do not match the embedded subgroup");
  check_cochain_shape(MQ, beta);
  if (beta.degree != 2)
    fail(ValidationError::Code::InvalidInput, {beta.degree}, "inflation expects degree 2");

  // The embedded subgroup must be fixed by the kernel of q, and the quotient
  // action must agree with the ambient action through preimages.
  for (int g = 0; g < M.G.order; ++g) {
    bool in_kernel = q.map[g] == MQ.G.identity;
    for (i64 t = 0; t < emb.sub.order; ++t) {
      i64 ambient = emb.include[t];
      if (in_kernel && M.act(g, ambient) != ambient)
        fail(ValidationError::Code::CoefficientMismatch, {g, t},
             "coefficients are not invariant under the quotient kernel");
      if (M.act(g, ambient) != emb.include[MQ.act(q.map[g], t)])
        fail(ValidationError::Code::CoefficientMismatch, {g, t},
             "quotient action disagrees with the ambient action");
    }
  }

  const int n = M.G.order;
  Cochain out = zero_cochain(M, 2);
  for (int g1 = 0; g1 < n; ++g1)
    for (int g2 = 0; g2 < n; ++g2)
      out.values[static_cast<i64>(g1) * n + g2] =
          emb.include[cochain_value2(MQ, beta, q.map[g1], q.map[g2])];
  return out;
}

Cochain pushforward(const GModule& Msrc, const GModule& Mdst,
                    const std::vector<i64>& f, const Cochain& h) {
  if (!(Msrc.G == Mdst.G))
    fail(ValidationError::Code::ModuleMismatch, {}, "pushforward needs one group on both sides");
  if (static_cast<i64>(f.size()) != Msrc.A.order)
    fail(ValidationError::Code::ShapeMismatch, {static_cast<i64>(f.size())},
         "coefficient map must cover the source coefficients");
  for (i64 v : f)
    if (v < 0 || v >= Mdst.A.order)
      fail(ValidationError::Code::InvalidInput, {v}, "coefficient image out of range");
  for (i64 a = 0; a < Msrc.A.order; ++a)
    for (i64 b = 0; b < Msrc.A.order; ++b)
      if (f[Msrc.A.add(a, b)] != Mdst.A.add(f[a], f[b]))
        fail(ValidationError::Code::NotHomomorphism, {a, b},
             "coefficient map is not additive");
  for (int g = 0; g < Msrc.G.order; ++g)
    for (i64 a = 0; a < Msrc.A.order; ++a)
      if (f[Msrc.act(g, a)] != Mdst.act(g, f[a]))
        fail(ValidationError::Code::NotEquivariant, {g, a},
             "coefficient map does not commute with the action");
  check_cochain_shape(Msrc, h);
  Cochain out = h;
  for (auto& v : out.values) v = f[v];
  return out;
}

}  // namespace gclab
