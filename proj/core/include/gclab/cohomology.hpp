#pragma once

#include <functional>
#include <memory>

#include "gclab/cochain.hpp"

namespace gclab {

// H^degree(G, A) with explicit generator representatives and a coordinate
// reduction. Coordinates live in prod Z/invariant_factors[i] (factors in
// ascending divisibility, trivial factors dropped); class_of maps any cocycle
// to canonical residues in that basis and rejects non-cocycles.
struct CohomologyGroup {
  int degree = 0;
  GModule M;
  std::vector<i64> invariant_factors;
  std::vector<Cochain> generators;
  std::function<std::vector<i64>(const Cochain&)> class_of_fn;

  i64 order() const;
  std::vector<i64> class_of(const Cochain& z) const { return class_of_fn(z); }
  bool trivial_class(const Cochain& z) const;
  Cochain representative(const std::vector<i64>& coords) const;
};

// Integer linear algebra path (Smith normal form over the lifted lattices).
CohomologyGroup cohomology_group(const GModule& M, int degree);

// Exhaustive path: enumerates normalized cochains. Every class has a
// normalized representative and normalized cocycles are cohomologous exactly
// when they differ by the coboundary of a normalized 1-cochain, so the
// normalized complex computes the same group. Throws CapExceeded when the
// table count is out of reach.
CohomologyGroup cohomology_group_enumerative(const GModule& M, int degree);

// Degree-1 witness g with h1 - h2 = d1 g, or nullopt when the classes differ.
std::optional<Cochain> cohomologous(const GModule& M, const Cochain& h1,
                                    const Cochain& h2);

// Identity embedding of A into itself (for inflation along the identity
// quotient and other coefficient plumbing).
SubgroupEmbedding full_embedding(const AbelianGroup& A);

// Pullback of beta along the surjection q: G -> Q, with coefficients carried
// from the invariant subgroup emb (inside M's coefficients) back into A.
// MQ is beta's module over Q; its action must match M's through preimages.
Cochain inflation(const GModule& M, const GroupHom& q, const GModule& MQ,
                  const SubgroupEmbedding& emb, const Cochain& beta);

// Coefficient pushforward along f: A -> B (additive, G-equivariant).
Cochain pushforward(const GModule& Msrc, const GModule& Mdst,
                    const std::vector<i64>& f, const Cochain& h);

}  // namespace gclab
