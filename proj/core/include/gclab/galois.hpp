#pragma once

#include <optional>
#include <vector>

#include "gclab/baer.hpp"
#include "gclab/cohomology.hpp"
#include "gclab/extension.hpp"
#include "gclab/morita.hpp"
#include "gclab/torsor.hpp"

namespace gclab {

// Descent data: the acting group Gamma together with the coefficient module
// it acts on.
struct GaloisContext {
  GModule coeff;  // coeff.G is the acting group Gamma
};

// A groupoid with a Gamma-action by automorphisms (a strict left action on
// objects and arrows). When `fam` is present it must be conjugation invariant
// and action compatible: arr_act[g][iso_x(a)] = iso_{g.x}(g.a).
struct EquivariantGroupoid {
  Groupoid X;
  FiniteGroup gal;
  std::vector<std::vector<int>> obj_act;  // [gamma][object]
  std::vector<std::vector<int>> arr_act;  // [gamma][arrow]
  std::optional<BoundingFamily> fam;
};

// A torsor with a fibrewise lift of the Gamma-action. base_act is a strict
// action; carrier_act is only a quasi-action (per-gamma bijections that move
// anchors along obj_act, move fibres along base_act and commute with the
// groupoid action through arr_act; nothing ties carrier_act[g][carrier_act[h]]
// to carrier_act[gh]). The failure of the composition law is exactly what the
// extracted 2-cocycle measures.
struct EquivariantTorsor {
  GroupoidTorsor P;
  std::vector<std::vector<i64>> base_act;     // [gamma][base point]
  std::vector<std::vector<i64>> carrier_act;  // [gamma][carrier point]
  i64 basepoint = 0;
};

void validate_equivariant_groupoid(const GaloisContext& ctx, const EquivariantGroupoid& EX);
void validate_equivariant_torsor(const GaloisContext& ctx, const EquivariantGroupoid& EX,
                                 const EquivariantTorsor& EP);

// Every hypothesis of the classification, checked explicitly: valid
// equivariant structures, connected groupoid, a compatible bounding family
// installed, a one-component base, identity lifts that act as the identity,
// and a basepoint whose fibre the action fixes. Violations raise
// HypothesisFailed naming the hypothesis.
void validate_descent_hypotheses(const GaloisContext& ctx, const EquivariantGroupoid& EX,
                                 const EquivariantTorsor& EP);

// Installs an action-compatible bounding family on EX when one exists: the
// spanning-tree family is tried first, then each coefficient automorphism
// twist of it. This sweep is decisive, because any two conjugation-invariant
// families on a connected groupoid differ by a single automorphism of A.
void ensure_compatible_family(const GaloisContext& ctx, EquivariantGroupoid& EX);

// The obstruction cocycle of an equivariant torsor: with u_g the carrier lift
// of g, the composite u_{st} . u_t^{-1} . u_s^{-1} is an automorphism of the
// torsor and h(s, t) is its coefficient value through the family. h is a
// normalized 2-cocycle of the context module.
Cochain cocycle_from_torsor(const GaloisContext& ctx, const EquivariantGroupoid& EX,
                            const EquivariantTorsor& EP);

// The reverse construction from a 2-cocycle beta: the extension group E of
// beta acts on Gamma through its projection; X is that action groupoid with
// Gamma acting by right translation, P is the represented torsor at the
// identity object with the translation correctors. Extraction returns the
// normalization of beta on the nose.
struct DescentPresentation {
  EquivariantGroupoid X;
  EquivariantTorsor P;
  GroupExtension E;
};
DescentPresentation groupoid_from_cocycle(const GaloisContext& ctx, const Cochain& beta);

// The torsor of arrows into the lowest object, carrying the standard lift:
// gamma moves an arrow by arr_act and is folded back into the carrier by a
// corrector arrow gamma(hub) -> hub, the corrector_rank-th lowest one (the
// identity gamma always takes the identity corrector). Different ranks model
// different trivialization choices; their extractions differ by an explicit
// coboundary.
EquivariantTorsor star_equivariant_torsor(const GaloisContext& ctx,
                                          const EquivariantGroupoid& EX,
                                          int corrector_rank = 0);

// g(s) = coefficient value of u'_s . u_s^{-1} for two carrier lifts of one
// torsor (u from `first`, u' from `second`). Extractions then satisfy
// h_first - h_second = d g.
Cochain quasi_action_mismatch(const GaloisContext& ctx, const EquivariantGroupoid& EX,
                              const EquivariantTorsor& first, const EquivariantTorsor& second);

// Exhaustive search for a strict Gamma-action on the star torsor extending
// the groupoid equivariance: one image of the basepoint per gamma determines
// the candidate, and strictness reduces to the pairwise composition check at
// the basepoint. Returns the first strict structure in lexicographic order.
std::optional<EquivariantTorsor> search_invariant_torsor(const GaloisContext& ctx,
                                                         const EquivariantGroupoid& EX);

struct EliminabilityVerdict {
  bool eliminable = false;
  std::vector<i64> class_coords;      // extraction class, one residue per factor
  std::vector<i64> invariant_factors;
  // Degree-1 witness with d(witness) = extracted cocycle; present exactly
  // when the class vanishes.
  std::optional<Cochain> coboundary_witness;
  // Strict invariant structure found by the search path, when one exists.
  std::optional<EquivariantTorsor> invariant_torsor;
  bool paths_agree = false;  // vacuously true when the search was skipped
  bool search_ran = false;
};

// Decides whether the descent obstruction of EX vanishes, twice over: by the
// cohomology class of the extracted cocycle, and by direct search for a
// strict invariant torsor. Both verdicts are reported; the classification
// says they coincide. The class path always runs; the search path is skipped
// (search_ran = false) when its budget exceeds the enumeration cap.
EliminabilityVerdict is_eliminable(const GaloisContext& ctx, const EquivariantGroupoid& EX);

struct TransportReport {
  Cochain target_cocycle;  // extraction over the morphism target
  Cochain pulled_cocycle;  // extraction over the source, with transported data
  bool equal = false;
};

// Extraction before and after transport along an equivariant Morita morphism
// f: pulls back the torsor, its carrier lift and the bounding family (through
// the hom-set bijections of f) and extracts again. The two cocycles agree
// exactly, not just up to coboundary.
TransportReport morita_class_invariance(const GaloisContext& ctx,
                                        const EquivariantGroupoid& src,
                                        const EquivariantGroupoid& tgt,
                                        const GroupoidFunctor& f,
                                        const EquivariantTorsor& EP);

struct EquivariantBundle {
  EquivariantGroupoid X;
  EquivariantTorsor P;
};

// Bundle sum with the diagonal Gamma-structure on representatives; the
// extracted cocycle of the sum is the pointwise sum of the extracted
// cocycles.
EquivariantBundle equivariant_baer_sum(const GaloisContext& ctx, const EquivariantBundle& a,
                                       const EquivariantBundle& b);

// Trivial bundle with the coefficient action as its arrow lift; extraction
// is identically zero, so it is the neutral summand.
EquivariantBundle equivariant_trivial_bundle(const GaloisContext& ctx, i64 n_base);

}  // namespace gclab
