#pragma once

#include <vector>

#include "gclab/extension.hpp"
#include "gclab/group.hpp"
#include "gclab/groupoid.hpp"
#include "gclab/torsor.hpp"

namespace gclab {

// Cover of a free H-set X built from an extension G of H: one copy of G per
// orbit, mapped onto X by p(alpha, g) = pi(g) . x_alpha and carrying the
// natural torsor structure over the orbit set for the action groupoid of G
// acting through pi. Carrier point (alpha, g) is packed as alpha*|G| + g.
struct DxgStructure {
  FiniteGroup H;
  std::vector<std::vector<int>> h_action;  // h_action[h][x]
  GroupExtension E;
  std::vector<int> orbit_of;         // X point -> orbit index
  std::vector<int> representatives;  // orbit -> chosen X point
  Groupoid X;                        // action groupoid of G on the point set
  GroupoidTorsor cover;              // base = orbit set, anchor = the cover map
  std::vector<i64> cover_map;        // carrier -> X point, p(alpha, g)
};

// Validates that h_action is a free left H-action on {0..n_points-1} and
// that E projects onto H, then builds the cover with lowest-index orbit
// representatives. NegativeResult NotFree(h, x) on a fixed point.
DxgStructure dxg_structure(int n_points, const FiniteGroup& H,
                           const std::vector<std::vector<int>>& h_action,
                           const GroupExtension& E);

// Same, with explicit orbit representatives (one X point per orbit, listed
// in orbit order). The torsor is isomorphic to the default one; tests
// exhibit the isomorphism explicitly.
DxgStructure dxg_structure(int n_points, const FiniteGroup& H,
                           const std::vector<std::vector<int>>& h_action,
                           const GroupExtension& E,
                           const std::vector<int>& representatives);

}  // namespace gclab
