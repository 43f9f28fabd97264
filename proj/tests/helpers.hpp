// Shared builders for the test suite: module corpora, a groupoid expansion
// with its inclusion functor, and fixture paths.
#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gclab/galois.hpp"
#include "gclab/gmodule.hpp"
#include "gclab/groupoid.hpp"
#include "gclab/morita.hpp"

namespace gclab::testing {

inline std::string data_path(const std::string& name) {
  return std::string(GCLAB_TEST_DATA_DIR) + "/" + name;
}

inline std::mt19937 make_rng(unsigned seed) { return std::mt19937(seed); }

// Trivial module of a product of cyclic groups on a product of cyclic groups.
inline GModule trivial_module(const std::vector<i64>& group_moduli,
                              const std::vector<i64>& coeff_moduli) {
  return trivial_gmodule(group_from_cyclic_factors(group_moduli).to_group(),
                         group_from_cyclic_factors(coeff_moduli));
}

// Z/2 acting on Z/m by negation.
inline GModule negation_module(i64 m) {
  FiniteGroup G = cyclic_group(2);
  AbelianGroup A = group_from_cyclic_factors({m});
  std::vector<std::vector<i64>> action(2, std::vector<i64>(m));
  for (i64 a = 0; a < m; ++a) {
    action[0][a] = a;
    action[1][a] = A.neg(a);
  }
  return validate_gmodule(G, A, action);
}

// The fixed collection the randomized differential and extension properties
// run over: small trivial modules plus two nontrivial actions.
inline std::vector<std::pair<std::string, GModule>> desk_modules() {
  std::vector<std::pair<std::string, GModule>> mods;
  mods.emplace_back("Z/2 on Z/2", trivial_module({2}, {2}));
  mods.emplace_back("Z/3 on Z/3", trivial_module({3}, {3}));
  mods.emplace_back("Z/4 on Z/2", trivial_module({4}, {2}));
  mods.emplace_back("Z/2xZ/2 on Z/2", trivial_module({2, 2}, {2}));
  mods.emplace_back("Z/2 on Z/4", trivial_module({2}, {4}));
  mods.emplace_back("Z/6 on Z/3", trivial_module({6}, {3}));
  mods.emplace_back("Z/2 on Z/3 by negation", negation_module(3));
  mods.emplace_back("Z/2 on Z/4 by negation", negation_module(4));
  return mods;
}

// The nine (Gamma, A) pairs of the round-trip sweep, all trivial actions.
inline std::vector<std::pair<std::string, GModule>> sweep_modules() {
  std::vector<std::pair<std::string, GModule>> mods;
  const std::vector<std::pair<std::string, std::vector<i64>>> gammas = {
      {"Z/2", {2}}, {"Z/3", {3}}, {"Z/2xZ/2", {2, 2}}};
  const std::vector<std::pair<std::string, std::vector<i64>>> coeffs = {
      {"Z/2", {2}}, {"Z/3", {3}}, {"Z/4", {4}}};
  for (const auto& [gn, gm] : gammas)
    for (const auto& [an, am] : coeffs)
      mods.emplace_back(gn + " on " + an, trivial_module(gm, am));
  return mods;
}

struct Expansion {
  EquivariantGroupoid big;   // X x pair(2), diagonal action, doubled family
  GroupoidFunctor collapse;  // big -> X, forgets the copy; a Morita morphism
};

// Replaces every object of EX by two isomorphic copies. Morita-trivial by
// construction, so extraction must not notice the change.
inline Expansion expand_equivariant(const GaloisContext& ctx, const EquivariantGroupoid& EX) {
  const Groupoid& X = EX.X;
  int n_obj = 2 * X.n_objects;
  int n_arr = 4 * X.n_arrows;
  std::vector<int> src(n_arr), tgt(n_arr);
  for (int m = 0; m < X.n_arrows; ++m)
    for (int c1 = 0; c1 < 2; ++c1)
      for (int c2 = 0; c2 < 2; ++c2) {
        int idx = m * 4 + c1 * 2 + c2;
        src[idx] = 2 * X.src[m] + c1;
        tgt[idx] = 2 * X.tgt[m] + c2;
      }
  std::vector<std::array<int, 3>> triples;
  for (int m1 = 0; m1 < X.n_arrows; ++m1)
    for (int m2 = 0; m2 < X.n_arrows; ++m2) {
      int m12 = X.compose_raw(m1, m2);
      if (m12 < 0) continue;
      for (int c1 = 0; c1 < 2; ++c1)
        for (int c2 = 0; c2 < 2; ++c2)
          for (int c3 = 0; c3 < 2; ++c3)
            triples.push_back({m1 * 4 + c1 * 2 + c2, m2 * 4 + c2 * 2 + c3,
                               m12 * 4 + c1 * 2 + c3});
    }

  Expansion e;
  e.big.X = assemble_groupoid(n_obj, src, tgt, triples);
  e.big.gal = EX.gal;
  e.big.obj_act.assign(EX.gal.order, std::vector<int>(n_obj));
  e.big.arr_act.assign(EX.gal.order, std::vector<int>(n_arr));
  for (int g = 0; g < EX.gal.order; ++g) {
    for (int o = 0; o < X.n_objects; ++o)
      for (int c = 0; c < 2; ++c)
        e.big.obj_act[g][2 * o + c] = 2 * EX.obj_act[g][o] + c;
    for (int m = 0; m < X.n_arrows; ++m)
      for (int k = 0; k < 4; ++k)
        e.big.arr_act[g][m * 4 + k] = EX.arr_act[g][m] * 4 + k;
  }
  if (EX.fam) {
    BoundingFamily fam;
    fam.A = EX.fam->A;
    fam.iso.assign(n_obj, std::vector<i64>(fam.A.order));
    for (int o = 0; o < X.n_objects; ++o)
      for (int c = 0; c < 2; ++c)
        for (i64 a = 0; a < fam.A.order; ++a)
          fam.iso[2 * o + c][a] = EX.fam->iso[o][a] * 4 + c * 2 + c;
    e.big.fam = std::move(fam);
  }
  validate_equivariant_groupoid(ctx, e.big);

  e.collapse.source = e.big.X;
  e.collapse.target = X;
  e.collapse.f0.resize(n_obj);
  e.collapse.f1.resize(n_arr);
  for (int o = 0; o < n_obj; ++o) e.collapse.f0[o] = o / 2;
  for (int m = 0; m < n_arr; ++m) e.collapse.f1[m] = m / 4;
  validate_morita_morphism(e.collapse);
  return e;
}

}  // namespace gclab::testing
