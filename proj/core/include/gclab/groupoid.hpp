#pragma once

#include <array>
#include <optional>
#include <vector>

#include "gclab/group.hpp"

namespace gclab {

// Finite groupoid on dense object/arrow indices. Composition is written left
// to right: compose(f, g) is defined exactly when tgt(f) = src(g) and runs f
// first. The composition table stores -1 at undefined pairs.
struct Groupoid {
  int n_objects = 0;
  int n_arrows = 0;
  std::vector<int> src, tgt;  // arrow -> object
  std::vector<int> table;     // n_arrows * n_arrows, -1 where undefined
  std::vector<int> inv;       // arrow -> arrow
  std::vector<int> id_of;     // object -> arrow

  bool composable(int f, int g) const { return tgt[f] == src[g]; }
  int compose_raw(int f, int g) const {
    return table[static_cast<size_t>(f) * n_arrows + g];
  }
  int compose(int f, int g) const;  // throws BadComposability when undefined

  bool operator==(const Groupoid&) const = default;
};

// Exhaustive axiom check on a fully assembled groupoid.
Groupoid validate_groupoid(const Groupoid& raw);

// Builds a groupoid from source/target lists and composition triples
// (f, g, f-then-g); identities and inverses are derived, then everything is
// validated.
Groupoid assemble_groupoid(int n_objects, std::vector<int> src, std::vector<int> tgt,
                           const std::vector<std::array<int, 3>>& compose_triples);

Groupoid one_object_groupoid(const FiniteGroup& G);
Groupoid discrete_groupoid(int n);
Groupoid pair_groupoid(int n);
Groupoid equivalence_relation_groupoid(const std::vector<std::vector<int>>& blocks);

// Arrows are pairs (g, x) indexed g*|X| + x, running x -> g.x. The action
// table is action[g][x] = g.x and must be a left action.
Groupoid action_groupoid(const FiniteGroup& G, const std::vector<std::vector<i64>>& action);

struct GroupoidQuotient {
  int n_classes = 0;
  std::vector<int> class_of;              // object -> class
  std::vector<std::vector<int>> classes;  // class -> ascending objects
};

GroupoidQuotient groupoid_quotient(const Groupoid& X);
bool is_connected(const Groupoid& X);

// Arrows x -> y in ascending index order.
std::vector<int> hom_set(const Groupoid& X, int x, int y);

struct VertexGroup {
  FiniteGroup group;
  std::vector<int> arrows;  // group element -> loop arrow at the object
};
VertexGroup vertex_group(const Groupoid& X, int x);

// One isomorphism A -> Mor(x,x) per object. Families produced by bounded_by
// are transported along a spanning tree from the lowest object of each
// component, which makes them conjugation-invariant when A is abelian.
struct BoundingFamily {
  AbelianGroup A;
  std::vector<std::vector<i64>> iso;  // per object: A element -> loop arrow
};

std::optional<BoundingFamily> bounded_by(const Groupoid& X, const AbelianGroup& A);
std::optional<std::vector<std::vector<i64>>> bounded_by(const Groupoid& X,
                                                        const FiniteGroup& A);

void validate_bounding_family(const Groupoid& X, const BoundingFamily& fam);

// First {arrow, coefficient} where transporting the family along the arrow
// does not reproduce the family, or absent when compatible everywhere.
std::optional<std::vector<i64>> family_conjugation_defect(const Groupoid& X,
                                                          const BoundingFamily& fam);

// Per object, an arrow root -> x from the lowest object of its component,
// chosen breadth-first; identity at each root.
std::vector<int> spanning_paths(const Groupoid& X);

}  // namespace gclab
