#pragma once

#include <optional>
#include <vector>

#include "gclab/cochain.hpp"
#include "gclab/cohomology.hpp"
#include "gclab/gmodule.hpp"
#include "gclab/group.hpp"

namespace gclab {

// An extension 1 -> A -> E -> H -> 1 with abelian kernel. Elements of A enter
// E through kernel_embedding (written multiplicatively inside E); the induced
// H-module structure on A is part of the data and is validated against
// conjugation through a section.
struct GroupExtension {
  FiniteGroup total;
  GroupHom kernel_embedding;  // source: additive group of A
  GroupHom projection;        // target: H
  GModule induced_action;     // coefficients A as an H-module
};

struct Section {
  std::vector<i64> images;  // H element index -> total-group element index
  bool homomorphic = false;
};

void validate_extension(const GroupExtension& E);

// Builds the group on pairs (a, sigma), indexed a*|H| + sigma, with law
// (a,sigma)(b,tau) = (a + sigma.b + h(sigma,tau), sigma tau). Associativity of
// the raw table is scanned directly; the first failing triple projects to a
// witness of the 2-cocycle identity.
GroupExtension extension_from_cocycle(const GModule& M, const Cochain& h);

// Lowest total-group index in each fibre of the projection. For extensions
// built by extension_from_cocycle this is sigma -> (0, sigma).
Section canonical_section(const GroupExtension& E);

Section section_from_images(const GroupExtension& E, const std::vector<i64>& images);

// h(sigma,tau) = i^-1( j(sigma) j(tau) j(sigma tau)^-1 ).
Cochain cocycle_from_extension(const GroupExtension& E, const Section& j);

// Equivalence of extensions: an isomorphism of total groups that is the
// identity on A and on H. Returns the element map E1 -> E2 when one exists.
std::optional<std::vector<i64>> extensions_isomorphic(const GroupExtension& E1,
                                                      const GroupExtension& E2);

// Homomorphic sections of a split extension, grouped into orbits under
// conjugation by kernel elements, with the simply-transitive action of the
// first cohomology group on the orbit set.
struct SectionOrbitSet {
  std::vector<Section> sections;
  std::vector<int> orbit_of;               // per section
  int orbit_count = 0;
  CohomologyGroup h1;
  std::vector<std::vector<int>> action;    // [orbit][class rank] -> orbit
};

SectionOrbitSet sections_mod_conjugation(const GroupExtension& E);

}  // namespace gclab
