#pragma once

#include "gclab/group.hpp"

namespace gclab {

// A finite abelian group A with a left action of G by additive
// automorphisms: action[e] = id and action[gh] = action[g] after action[h].
struct GModule {
  FiniteGroup G;
  AbelianGroup A;
  std::vector<std::vector<i64>> action;  // action[g][a]

  i64 act(int g, i64 a) const { return action[g][a]; }
  bool same_shape(const GModule& o) const {
    return G == o.G && A.moduli == o.A.moduli && action == o.action;
  }
};

// Witnessed failures: NotAutomorphism(g), NotCompatible(g, h).
GModule validate_gmodule(FiniteGroup G, AbelianGroup A,
                         std::vector<std::vector<i64>> action);
GModule trivial_gmodule(FiniteGroup G, AbelianGroup A);

// The invariant subgroup A^G with an explicit cyclic decomposition and its
// inclusion into A. `include(t)` is realized as sum_i t_i * generators[i].
struct SubgroupEmbedding {
  AbelianGroup sub;               // abstract form, invariant factors ascending
  std::vector<i64> generators;    // ambient A indices, one per factor
  std::vector<i64> include;       // sub index -> ambient index
  std::vector<i64> elements;      // sorted ambient indices of the subgroup
};

SubgroupEmbedding invariants_subgroup(const GModule& M);

// Cyclic decomposition of a subset of A that is closed under addition.
// Factors in ascending divisibility; verified to be a direct sum.
SubgroupEmbedding decompose_subgroup(const AbelianGroup& A,
                                     std::vector<i64> elements);

}  // namespace gclab
