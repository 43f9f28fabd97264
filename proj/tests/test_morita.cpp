#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gclab/errors.hpp"
#include "gclab/morita.hpp"
#include "helpers.hpp"

using namespace gclab;

namespace {

// Fully faithful: every hom-set maps bijectively. Class-covering: every
// target object is connected to an image object.
void check_morita_embedding(const GroupoidFunctor& f) {
  validate_functor(f);
  const Groupoid& S = f.source;
  const Groupoid& T = f.target;
  for (int a = 0; a < S.n_objects; ++a)
    for (int b = 0; b < S.n_objects; ++b) {
      std::vector<int> hs = hom_set(S, a, b);
      std::vector<int> ht = hom_set(T, f.f0[a], f.f0[b]);
      REQUIRE(hs.size() == ht.size());
      std::vector<bool> hit(T.n_arrows, false);
      for (int m : hs) {
        CHECK_FALSE(hit[f.f1[m]]);
        hit[f.f1[m]] = true;
      }
    }
  for (int w = 0; w < T.n_objects; ++w) {
    bool covered = false;
    for (int a = 0; a < S.n_objects && !covered; ++a)
      covered = !hom_set(T, f.f0[a], w).empty();
    CHECK(covered);
  }
}

}  // namespace

TEST_CASE("identity functor is a Morita morphism") {
  Groupoid X = pair_groupoid(3);
  GroupoidFunctor f = identity_functor(X);
  validate_morita_morphism(f);
  check_morita_embedding(f);
}

TEST_CASE("pair groupoid is equivalent to the point") {
  Groupoid point = one_object_groupoid(cyclic_group(1));
  Groupoid pairs = pair_groupoid(3);
  auto Q = are_morita_equivalent(pairs, point);
  REQUIRE(Q.has_value());
  validate_bitorsor(*Q);
  LinkingGroupoid L = linking_groupoid(*Q);
  check_morita_embedding(L.embed_x);
  check_morita_embedding(L.embed_y);
  CHECK(L.W.n_objects == pairs.n_objects + point.n_objects);
}

TEST_CASE("groups of different order are not equivalent") {
  Groupoid z2 = one_object_groupoid(cyclic_group(2));
  Groupoid z3 = one_object_groupoid(cyclic_group(3));
  CHECK_FALSE(are_morita_equivalent(z2, z3).has_value());
}

TEST_CASE("isomorphic vertex groups in equal class counts are equivalent") {
  Groupoid z2 = one_object_groupoid(cyclic_group(2));
  // Z/2 acting trivially on one point is the same groupoid; on two points it
  // has two classes and is not equivalent to the single object.
  Groupoid doubled = action_groupoid(cyclic_group(2), {{0, 1}, {0, 1}});
  CHECK_FALSE(are_morita_equivalent(z2, doubled).has_value());
  Groupoid swap = action_groupoid(cyclic_group(2), {{0, 1}, {1, 0}});
  auto Q = are_morita_equivalent(swap, pair_groupoid(2));
  REQUIRE(Q.has_value());
  validate_bitorsor(*Q);
}

TEST_CASE("vertex group isomorphism type matters beyond order") {
  Groupoid z4 = one_object_groupoid(cyclic_group(4));
  Groupoid klein =
      one_object_groupoid(group_from_cyclic_factors({2, 2}).to_group());
  CHECK_FALSE(are_morita_equivalent(z4, klein).has_value());
  CHECK(are_morita_equivalent(z4, z4).has_value());
}

TEST_CASE("disconnected groupoids match componentwise") {
  Groupoid two_blocks = equivalence_relation_groupoid({{0, 1}, {2, 3}});
  Groupoid dots = discrete_groupoid(2);
  auto Q = are_morita_equivalent(two_blocks, dots);
  REQUIRE(Q.has_value());
  validate_bitorsor(*Q);
  CHECK_FALSE(are_morita_equivalent(two_blocks, discrete_groupoid(3)).has_value());
  // Same classes, mismatched vertex groups.
  Groupoid mixed = action_groupoid(cyclic_group(2), {{0, 1}, {0, 1}});
  CHECK_FALSE(are_morita_equivalent(two_blocks, mixed).has_value());
}

TEST_CASE("bitorsor from a collapse morphism") {
  // pair(2) -> point collapses everything; the induced bitorsor certifies
  // the equivalence directly.
  Groupoid pairs = pair_groupoid(2);
  Groupoid point = one_object_groupoid(cyclic_group(1));
  GroupoidFunctor f;
  f.source = pairs;
  f.target = point;
  f.f0 = {0, 0};
  f.f1 = {0, 0, 0, 0};
  validate_morita_morphism(f);
  Bitorsor Q = bitorsor_from_morphism(f);
  validate_bitorsor(Q);
  LinkingGroupoid L = linking_groupoid(Q);
  check_morita_embedding(L.embed_x);
  check_morita_embedding(L.embed_y);
}

TEST_CASE("non-morita functors are rejected") {
  // point -> z2 inclusion is fully faithful on nothing: hom(0,0) has one
  // element upstairs and two downstairs.
  GroupoidFunctor f;
  f.source = one_object_groupoid(cyclic_group(1));
  f.target = one_object_groupoid(cyclic_group(2));
  f.f0 = {0};
  f.f1 = {0};
  validate_functor(f);
  CHECK_THROWS_AS(validate_morita_morphism(f), ValidationError);

  // discrete(2) -> discrete(1) is not a functor target mismatch but misses
  // object surjectivity in the other direction; build the non-surjective one.
  GroupoidFunctor g;
  g.source = discrete_groupoid(1);
  g.target = discrete_groupoid(2);
  g.f0 = {0};
  g.f1 = {0};
  validate_functor(g);
  CHECK_THROWS_AS(validate_morita_morphism(g), ValidationError);
}

TEST_CASE("linking groupoid offsets index the four arrow blocks") {
  Groupoid pairs = pair_groupoid(2);
  Groupoid point = one_object_groupoid(cyclic_group(1));
  auto Q = are_morita_equivalent(pairs, point);
  REQUIRE(Q.has_value());
  LinkingGroupoid L = linking_groupoid(*Q);
  CHECK(L.q_offset == pairs.n_arrows);
  CHECK(L.qinv_offset == L.q_offset + Q->n_carrier);
  CHECK(L.y_arrow_offset == L.qinv_offset + Q->n_carrier);
  CHECK(L.W.n_arrows == L.y_arrow_offset + point.n_arrows);
  for (int q = 0; q < Q->n_carrier; ++q) {
    CHECK(L.W.src[L.q_offset + q] == Q->l[q]);
    CHECK(L.W.tgt[L.q_offset + q] == pairs.n_objects + Q->r[q]);
  }
}

TEST_CASE("morita relation is reflexive and symmetric on a small corpus") {
  std::vector<Groupoid> corpus = {
      one_object_groupoid(cyclic_group(1)),
      pair_groupoid(2),
      one_object_groupoid(cyclic_group(2)),
      discrete_groupoid(2),
  };
  for (size_t i = 0; i < corpus.size(); ++i) {
    CHECK(are_morita_equivalent(corpus[i], corpus[i]).has_value());
    for (size_t j = i + 1; j < corpus.size(); ++j) {
      bool ij = are_morita_equivalent(corpus[i], corpus[j]).has_value();
      bool ji = are_morita_equivalent(corpus[j], corpus[i]).has_value();
      CHECK(ij == ji);
    }
  }
}
