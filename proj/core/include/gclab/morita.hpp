#pragma once

#include <optional>
#include <vector>

#include "gclab/groupoid.hpp"

namespace gclab {

struct GroupoidFunctor {
  Groupoid source, target;
  std::vector<int> f0;  // object map
  std::vector<int> f1;  // arrow map
};

// Functoriality: endpoints, identities and composites are respected.
GroupoidFunctor validate_functor(const GroupoidFunctor& f);

// A functor that is surjective on objects and restricts to a bijection on
// every hom-set.
GroupoidFunctor validate_morita_morphism(const GroupoidFunctor& f);

GroupoidFunctor identity_functor(const Groupoid& X);

// A set with commuting torsor structures on both sides: an X-torsor over the
// objects of Y (anchor l, fibre map r) and a Y-torsor over the objects of X.
struct Bitorsor {
  Groupoid X, Y;
  int n_carrier = 0;
  std::vector<int> l;                   // carrier -> X objects
  std::vector<int> r;                   // carrier -> Y objects
  std::vector<std::vector<int>> act_x;  // [X arrow][q] -> carrier or -1
  std::vector<std::vector<int>> act_y;  // [Y arrow][q] -> carrier or -1
};

void validate_bitorsor(const Bitorsor& Q);

// Q = { (m, x) : m in Y arrows, src(m) = f0(x) } for a Morita morphism
// f : X -> Y, with both actions by composition.
Bitorsor bitorsor_from_morphism(const GroupoidFunctor& f);

// W with objects X0 followed by Y0 and arrows X1, Q, reversed Q, Y1 in that
// order; a Q arrow runs l(q) -> |X0| + r(q).
struct LinkingGroupoid {
  Groupoid W;
  GroupoidFunctor embed_x, embed_y;
  int q_offset = 0, qinv_offset = 0, y_arrow_offset = 0;
};

LinkingGroupoid linking_groupoid(const Bitorsor& Q);

// Decision by matching quotient classes with isomorphic vertex groups; the
// returned bitorsor certifies equivalence.
std::optional<Bitorsor> are_morita_equivalent(const Groupoid& X, const Groupoid& Y);

}  // namespace gclab
