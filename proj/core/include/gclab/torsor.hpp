#pragma once

#include <optional>
#include <vector>

#include "gclab/groupoid.hpp"
#include "gclab/morita.hpp"

namespace gclab {

// A homogeneous space for a groupoid, fibred over a base set. The action
// act(m, p) is defined exactly when src(m) = anchor(p); it fixes proj, moves
// anchor to tgt(m), and is simply transitive on each fibre of proj.
struct GroupoidTorsor {
  Groupoid X;
  i64 n_carrier = 0;
  i64 n_base = 0;
  std::vector<i64> proj;                  // carrier -> base
  std::vector<i64> anchor;                // carrier -> X objects
  std::vector<std::vector<i64>> action;   // [arrow][p] -> carrier or -1

  i64 act_raw(int m, i64 p) const { return action[m][p]; }
};

GroupoidTorsor validate_torsor(const GroupoidTorsor& raw);

// Checked action application; BadComposability when undefined.
i64 torsor_act(const GroupoidTorsor& P, int m, i64 p);

// The unique arrow with act(m, p) = q for p, q in one fibre; NotPrincipal when
// none exists (validated torsors always have exactly one).
int principal_arrow(const GroupoidTorsor& P, i64 p, i64 q);

// A map of carriers over the same groupoid and base that preserves proj and
// anchor and commutes with the action.
void validate_torsor_morphism(const GroupoidTorsor& P, const GroupoidTorsor& Q,
                              const std::vector<i64>& map);

std::optional<std::vector<i64>> torsor_isomorphism(const GroupoidTorsor& P,
                                                   const GroupoidTorsor& Q);

// For f : X -> Y and P a Y-torsor: carrier {(x, p) : f0(x) = anchor(p)} with
// act(s, (x, p)) = (tgt s, act(f1 s, p)), over the same base.
GroupoidTorsor pullback_torsor(const GroupoidFunctor& f, const GroupoidTorsor& P);

// For f : X -> Y and P an X-torsor: carrier P / (p ~ act(s, p) when f1(s) is
// an identity), action through arbitrary f1-preimages; well-definedness of the
// quotient action is checked.
struct PushforwardResult {
  GroupoidTorsor torsor;
  std::vector<i64> point_class;  // original carrier -> quotient carrier
};
PushforwardResult pushforward_torsor(const GroupoidFunctor& f, const GroupoidTorsor& P);

// The automorphism group of a torsor of a connected groupoid bounded by A,
// identified with A via a conjugation-invariant bounding family:
// a acts by p -> act(iso_{anchor(p)}(a), p).
struct TorsorAutomorphisms {
  BoundingFamily fam;
  std::vector<std::vector<i64>> maps;  // A element -> carrier permutation

  // Inverse lookup; NonUniqueAutomorphismValue when the map is not in the
  // family.
  i64 value_of(const std::vector<i64>& map) const;
};

TorsorAutomorphisms torsor_automorphisms(const GroupoidTorsor& P, const BoundingFamily& fam);
TorsorAutomorphisms torsor_automorphisms(const GroupoidTorsor& P, const AbelianGroup& A);

// The torsor of arrows into the lowest object of each component, over the
// groupoid quotient.
GroupoidTorsor star_torsor(const Groupoid& X);

// A torsor over the groupoid quotient. Unconstrained finite groupoids always
// admit one (the star torsor); the optional shape matches the equivariant
// search, which can fail.
std::optional<GroupoidTorsor> find_torsor_over_quotient(const Groupoid& X);

}  // namespace gclab
