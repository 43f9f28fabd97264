#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "gclab/galois.hpp"
#include "helpers.hpp"

using namespace gclab;
using gclab::testing::sweep_modules;
using gclab::testing::trivial_module;

TEST_CASE("descent groupoid from a cocycle validates all hypotheses") {
  GModule M = trivial_module({3}, {3});
  GaloisContext ctx{M};
  CohomologyGroup H = cohomology_group(M, 2);
  DescentPresentation D = groupoid_from_cocycle(ctx, H.representative({1}));
  validate_equivariant_groupoid(ctx, D.X);
  validate_equivariant_torsor(ctx, D.X, D.P);
  validate_descent_hypotheses(ctx, D.X, D.P);
  CHECK(is_connected(D.X.X));
  REQUIRE(D.X.fam.has_value());
  CHECK_FALSE(family_conjugation_defect(D.X.X, *D.X.fam).has_value());
  validate_extension(D.E);
}

TEST_CASE("extraction recovers the constructing class with exact coordinates") {
  // The sign matters: over Z/3 the classes 1 and 2 are distinct, so a
  // backwards corrector convention would fail this case.
  for (const auto& [name, M] : sweep_modules()) {
    CAPTURE(name);
    GaloisContext ctx{M};
    CohomologyGroup H = cohomology_group(M, 2);
    std::vector<i64> coords(H.invariant_factors.size(), 0);
    while (true) {
      Cochain beta = H.representative(coords);
      DescentPresentation D = groupoid_from_cocycle(ctx, beta);
      Cochain extracted = cocycle_from_torsor(ctx, D.X, D.P);
      CHECK(is_cocycle(M, extracted, nullptr));
      CHECK(H.class_of(extracted) == coords);
      CHECK(cohomologous(M, beta, extracted).has_value());
      size_t i = 0;
      for (; i < coords.size(); ++i) {
        if (++coords[i] < H.invariant_factors[i]) break;
        coords[i] = 0;
      }
      if (i == coords.size()) break;
    }
  }
}

TEST_CASE("different corrector choices change the cocycle by an exact coboundary") {
  GModule M = trivial_module({2, 2}, {4});
  GaloisContext ctx{M};
  CohomologyGroup H = cohomology_group(M, 2);
  std::vector<i64> coords(H.invariant_factors.size(), 0);
  coords[0] = 1;
  DescentPresentation D = groupoid_from_cocycle(ctx, H.representative(coords));
  EquivariantTorsor first = star_equivariant_torsor(ctx, D.X, 0);
  EquivariantTorsor second = star_equivariant_torsor(ctx, D.X, 1);
  Cochain h1 = cocycle_from_torsor(ctx, D.X, first);
  Cochain h2 = cocycle_from_torsor(ctx, D.X, second);
  Cochain g = quasi_action_mismatch(ctx, D.X, first, second);
  CHECK(cochain_sub(M, h1, h2) == differential(M, g));
  CHECK(H.class_of(h1) == H.class_of(h2));
}

TEST_CASE("search finds an invariant torsor exactly for trivial classes") {
  GModule M = trivial_module({2}, {2});
  GaloisContext ctx{M};
  CohomologyGroup H = cohomology_group(M, 2);

  DescentPresentation split = groupoid_from_cocycle(ctx, zero_cochain(M, 2));
  auto found = search_invariant_torsor(ctx, split.X);
  REQUIRE(found.has_value());
  validate_equivariant_torsor(ctx, split.X, *found);
  Cochain h = cocycle_from_torsor(ctx, split.X, *found);
  CHECK(H.trivial_class(h));
  CHECK(cochain_is_zero(h));  // strict actions extract the zero table

  DescentPresentation twisted = groupoid_from_cocycle(ctx, H.representative({1}));
  CHECK_FALSE(search_invariant_torsor(ctx, twisted.X).has_value());
}

TEST_CASE("is_eliminable runs both paths and they agree") {
  for (const auto& [name, M] : sweep_modules()) {
    CAPTURE(name);
    GaloisContext ctx{M};
    CohomologyGroup H = cohomology_group(M, 2);
    std::vector<i64> zero(H.invariant_factors.size(), 0);

    DescentPresentation split = groupoid_from_cocycle(ctx, zero_cochain(M, 2));
    EliminabilityVerdict v = is_eliminable(ctx, split.X);
    CHECK(v.eliminable);
    CHECK(v.class_coords == zero);
    CHECK(v.paths_agree);
    REQUIRE(v.coboundary_witness.has_value());
    Cochain extracted = cocycle_from_torsor(ctx, split.X, star_equivariant_torsor(ctx, split.X));
    CHECK(differential(M, *v.coboundary_witness) == extracted);
    if (v.search_ran) {
      REQUIRE(v.invariant_torsor.has_value());
      validate_equivariant_torsor(ctx, split.X, *v.invariant_torsor);
    }

    if (H.order() > 1) {
      std::vector<i64> coords(H.invariant_factors.size(), 0);
      coords[0] = 1;
      DescentPresentation twisted = groupoid_from_cocycle(ctx, H.representative(coords));
      EliminabilityVerdict w = is_eliminable(ctx, twisted.X);
      CHECK_FALSE(w.eliminable);
      CHECK(w.class_coords == coords);
      CHECK(w.paths_agree);
      CHECK_FALSE(w.coboundary_witness.has_value());
    }
  }
}

TEST_CASE("transport along the identity is exact") {
  GModule M = trivial_module({3}, {3});
  GaloisContext ctx{M};
  DescentPresentation D =
      groupoid_from_cocycle(ctx, cohomology_group(M, 2).representative({2}));
  TransportReport r = morita_class_invariance(ctx, D.X, D.X,
                                              identity_functor(D.X.X), D.P);
  CHECK(r.equal);
  CHECK(r.target_cocycle == r.pulled_cocycle);
}

TEST_CASE("transport along the doubling collapse is exact") {
  GModule M = trivial_module({2}, {4});
  GaloisContext ctx{M};
  CohomologyGroup H = cohomology_group(M, 2);
  DescentPresentation D = groupoid_from_cocycle(ctx, H.representative({1}));
  gclab::testing::Expansion e = gclab::testing::expand_equivariant(ctx, D.X);
  TransportReport r = morita_class_invariance(ctx, e.big, D.X, e.collapse, D.P);
  CHECK(r.equal);
  CHECK(H.class_of(r.target_cocycle) == std::vector<i64>{1});
}

TEST_CASE("equivariant validation rejects broken actions") {
  GModule M = trivial_module({2}, {2});
  GaloisContext ctx{M};
  DescentPresentation D = groupoid_from_cocycle(ctx, zero_cochain(M, 2));

  EquivariantGroupoid broken = D.X;
  std::swap(broken.obj_act[1][0], broken.obj_act[1][1]);
  CHECK_THROWS_AS(validate_equivariant_groupoid(ctx, broken), ValidationError);

  EquivariantTorsor bad = D.P;
  bad.basepoint = D.P.P.n_carrier;  // out of range
  CHECK_THROWS_AS(validate_equivariant_torsor(ctx, D.X, bad), ValidationError);

  EquivariantTorsor lift = D.P;
  std::swap(lift.carrier_act[1][0], lift.carrier_act[1][1]);
  CHECK_THROWS_AS(validate_equivariant_torsor(ctx, D.X, lift), ValidationError);
}

TEST_CASE("ensure_compatible_family is idempotent and fills gaps") {
  GModule M = trivial_module({2}, {2});
  GaloisContext ctx{M};
  DescentPresentation D = groupoid_from_cocycle(ctx, zero_cochain(M, 2));
  EquivariantGroupoid no_fam = D.X;
  BoundingFamily kept = *no_fam.fam;
  no_fam.fam.reset();
  ensure_compatible_family(ctx, no_fam);
  REQUIRE(no_fam.fam.has_value());
  validate_equivariant_groupoid(ctx, no_fam);
  EquivariantGroupoid again = no_fam;
  ensure_compatible_family(ctx, again);
  CHECK(again.fam->iso == no_fam.fam->iso);
  CHECK(kept.A.isomorphic(no_fam.fam->A));
}

TEST_CASE("trivial bundle extracts the zero cocycle and is a Baer unit") {
  GModule M = trivial_module({2}, {2});
  GaloisContext ctx{M};
  CohomologyGroup H = cohomology_group(M, 2);
  EquivariantBundle unit = equivariant_trivial_bundle(ctx, 1);
  validate_descent_hypotheses(ctx, unit.X, unit.P);
  Cochain zero = cocycle_from_torsor(ctx, unit.X, unit.P);
  CHECK(cochain_is_zero(zero));

  DescentPresentation D = groupoid_from_cocycle(ctx, H.representative({1}));
  EquivariantBundle sum = equivariant_baer_sum(ctx, {D.X, D.P}, unit);
  Cochain h = cocycle_from_torsor(ctx, sum.X, sum.P);
  CHECK(H.class_of(h) == std::vector<i64>{1});
}

TEST_CASE("Baer sum doubles to zero over Z/2 coefficients") {
  GModule M = trivial_module({2, 2}, {2});
  GaloisContext ctx{M};
  CohomologyGroup H = cohomology_group(M, 2);
  DescentPresentation D = groupoid_from_cocycle(ctx, H.representative({1, 0, 1}));
  EquivariantBundle sum = equivariant_baer_sum(ctx, {D.X, D.P}, {D.X, D.P});
  Cochain h = cocycle_from_torsor(ctx, sum.X, sum.P);
  CHECK(H.trivial_class(h));
  EliminabilityVerdict v = is_eliminable(ctx, sum.X);
  CHECK(v.eliminable);
}

TEST_CASE("Baer sum adds classes pointwise on sampled pairs") {
  std::mt19937 rng(77);
  for (const auto& [name, M] :
       {std::pair<std::string, GModule>{"Z/2 on Z/4", trivial_module({2}, {4})},
        std::pair<std::string, GModule>{"Z/3 on Z/3", trivial_module({3}, {3})}}) {
    CAPTURE(name);
    GaloisContext ctx{M};
    CohomologyGroup H = cohomology_group(M, 2);
    if (H.order() < 2) continue;
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<i64> ca(H.invariant_factors.size()), cb(H.invariant_factors.size());
      for (size_t i = 0; i < ca.size(); ++i) {
        ca[i] = std::uniform_int_distribution<i64>(0, H.invariant_factors[i] - 1)(rng);
        cb[i] = std::uniform_int_distribution<i64>(0, H.invariant_factors[i] - 1)(rng);
      }
      DescentPresentation A = groupoid_from_cocycle(ctx, H.representative(ca));
      DescentPresentation B = groupoid_from_cocycle(ctx, H.representative(cb));
      EquivariantBundle sum = equivariant_baer_sum(ctx, {A.X, A.P}, {B.X, B.P});
      Cochain hs = cocycle_from_torsor(ctx, sum.X, sum.P);
      Cochain expected = cochain_add(M, cocycle_from_torsor(ctx, A.X, A.P),
                                     cocycle_from_torsor(ctx, B.X, B.P));
      CHECK(hs == expected);
      std::vector<i64> csum(ca.size());
      for (size_t i = 0; i < ca.size(); ++i)
        csum[i] = (ca[i] + cb[i]) % H.invariant_factors[i];
      CHECK(H.class_of(hs) == csum);
    }
  }
}

TEST_CASE("star equivariant torsor of the doubled descent groupoid") {
  GModule M = trivial_module({2}, {2});
  GaloisContext ctx{M};
  DescentPresentation D = groupoid_from_cocycle(ctx, zero_cochain(M, 2));
  gclab::testing::Expansion e = gclab::testing::expand_equivariant(ctx, D.X);
  EquivariantTorsor EP = star_equivariant_torsor(ctx, e.big);
  validate_equivariant_torsor(ctx, e.big, EP);
  validate_descent_hypotheses(ctx, e.big, EP);
  CohomologyGroup H = cohomology_group(M, 2);
  CHECK(H.trivial_class(cocycle_from_torsor(ctx, e.big, EP)));
}
