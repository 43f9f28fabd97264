#include "gclab/dxg.hpp"

#include <algorithm>

#include "gclab/caps.hpp"

namespace gclab {

namespace {

DxgStructure build(int n_points, const FiniteGroup& H,
                   const std::vector<std::vector<int>>& h_action,
                   const GroupExtension& E, const std::vector<int>* forced_reps) {
  if (n_points < 1)
    fail(ValidationError::Code::InvalidInput, {n_points}, "need a nonempty point set");
  if (static_cast<int>(h_action.size()) != H.order)
    fail(ValidationError::Code::ShapeMismatch, {static_cast<i64>(h_action.size())},
         "need one permutation per group element");
  for (int h = 0; h < H.order; ++h) {
    if (static_cast<int>(h_action[h].size()) != n_points)
      fail(ValidationError::Code::ShapeMismatch, {h}, "action row has the wrong length");
    std::vector<char> seen(n_points, 0);
    for (int x = 0; x < n_points; ++x) {
      int y = h_action[h][x];
      if (y < 0 || y >= n_points || seen[y])
        fail(ValidationError::Code::NotAnAction, {h, x}, "action row is not a permutation");
      seen[y] = 1;
    }
  }
  for (int x = 0; x < n_points; ++x)
    if (h_action[H.identity][x] != x)
      fail(ValidationError::Code::NotAnAction, {H.identity, x},
           "identity must act as the identity");
  for (int g = 0; g < H.order; ++g)
    for (int h = 0; h < H.order; ++h)
      for (int x = 0; x < n_points; ++x)
        if (h_action[g][h_action[h][x]] != h_action[H.op(g, h)][x])
          fail(ValidationError::Code::NotAnAction, {g, h, x},
               "rows do not compose as a left action");
  for (int h = 0; h < H.order; ++h) {
    if (h == H.identity) continue;
    for (int x = 0; x < n_points; ++x)
      if (h_action[h][x] == x)
        negative(NegativeResult::Kind::NotFree, {h, x},
                 "the action fixes a point");
  }

  validate_extension(E);
  if (!(E.projection.target == H))
    fail(ValidationError::Code::ModuleMismatch, {},
         "extension does not project onto the acting group");

  DxgStructure out;
  out.H = H;
  out.h_action = h_action;
  out.E = E;

  out.orbit_of.assign(n_points, -1);
  int n_orbits = 0;
  for (int x = 0; x < n_points; ++x) {
    if (out.orbit_of[x] >= 0) continue;
    out.representatives.push_back(x);
    for (int h = 0; h < H.order; ++h) out.orbit_of[h_action[h][x]] = n_orbits;
    ++n_orbits;
  }
  if (forced_reps) {
    if (static_cast<int>(forced_reps->size()) != n_orbits)
      fail(ValidationError::Code::ShapeMismatch, {static_cast<i64>(forced_reps->size())},
           "need exactly one representative per orbit");
    for (int alpha = 0; alpha < n_orbits; ++alpha) {
      int x = (*forced_reps)[alpha];
      if (x < 0 || x >= n_points || out.orbit_of[x] != alpha)
        fail(ValidationError::Code::InvalidInput, {alpha, x},
             "representative does not lie in its orbit");
    }
    out.representatives = *forced_reps;
  }

  const FiniteGroup& G = E.total;
  const std::vector<int>& pi = E.projection.map;
  std::vector<std::vector<i64>> through_pi(G.order, std::vector<i64>(n_points));
  for (int g = 0; g < G.order; ++g)
    for (int x = 0; x < n_points; ++x) through_pi[g][x] = h_action[pi[g]][x];
  out.X = action_groupoid(G, through_pi);

  i64 carrier = static_cast<i64>(n_orbits) * G.order;
  GroupoidTorsor D;
  D.X = out.X;
  D.n_carrier = carrier;
  D.n_base = n_orbits;
  D.proj.resize(carrier);
  D.anchor.resize(carrier);
  out.cover_map.resize(carrier);
  for (int alpha = 0; alpha < n_orbits; ++alpha)
    for (int g = 0; g < G.order; ++g) {
      i64 d = static_cast<i64>(alpha) * G.order + g;
      D.proj[d] = alpha;
      D.anchor[d] = h_action[pi[g]][out.representatives[alpha]];
      out.cover_map[d] = D.anchor[d];
    }
  D.action.assign(out.X.n_arrows, std::vector<i64>(carrier, -1));
  for (int m = 0; m < out.X.n_arrows; ++m) {
    int s = m / n_points, x = m % n_points;
    for (i64 d = 0; d < carrier; ++d) {
      if (D.anchor[d] != x) continue;
      int alpha = static_cast<int>(d / G.order), g = static_cast<int>(d % G.order);
      D.action[m][d] = static_cast<i64>(alpha) * G.order + G.op(s, g);
    }
  }
  out.cover = validate_torsor(D);
  return out;
}

}  // namespace

DxgStructure dxg_structure(int n_points, const FiniteGroup& H,
                           const std::vector<std::vector<int>>& h_action,
                           const GroupExtension& E) {
  return build(n_points, H, h_action, E, nullptr);
}

DxgStructure dxg_structure(int n_points, const FiniteGroup& H,
                           const std::vector<std::vector<int>>& h_action,
                           const GroupExtension& E,
                           const std::vector<int>& representatives) {
  return build(n_points, H, h_action, E, &representatives);
}

}  // namespace gclab
