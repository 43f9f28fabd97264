#include "gclab/torsor.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "gclab/caps.hpp"

namespace gclab {

i64 torsor_act(const GroupoidTorsor& P, int m, i64 p) {
  i64 q = P.action[m][p];
  if (q < 0)
    fail(ValidationError::Code::BadComposability, {m, p},
         "action requested where src(m) != anchor(p)");
  return q;
}

GroupoidTorsor validate_torsor(const GroupoidTorsor& raw) {
  const GroupoidTorsor& P = raw;
  validate_groupoid(P.X);
  if (P.n_carrier <= 0 || P.n_base <= 0)
    fail(ValidationError::Code::InvalidInput, {P.n_carrier, P.n_base},
         "carrier and base must be nonempty");
  if (static_cast<i64>(P.proj.size()) != P.n_carrier ||
      static_cast<i64>(P.anchor.size()) != P.n_carrier ||
      static_cast<int>(P.action.size()) != P.X.n_arrows)
    fail(ValidationError::Code::ShapeMismatch, {}, "torsor table sizes disagree");
  for (i64 p = 0; p < P.n_carrier; ++p) {
    if (P.proj[p] < 0 || P.proj[p] >= P.n_base)
      fail(ValidationError::Code::InvalidInput, {p}, "proj out of range");
    if (P.anchor[p] < 0 || P.anchor[p] >= P.X.n_objects)
      fail(ValidationError::Code::InvalidInput, {p}, "anchor out of range");
  }
  std::vector<char> hit(P.n_base, 0);
  for (i64 p = 0; p < P.n_carrier; ++p) hit[P.proj[p]] = 1;
  for (i64 s = 0; s < P.n_base; ++s)
    if (!hit[s])
      fail(ValidationError::Code::NotHomogeneous, {s}, "empty fibre over the base");

  for (int m = 0; m < P.X.n_arrows; ++m) {
    if (static_cast<i64>(P.action[m].size()) != P.n_carrier)
      fail(ValidationError::Code::ShapeMismatch, {m}, "ragged action table");
    for (i64 p = 0; p < P.n_carrier; ++p) {
      i64 q = P.action[m][p];
      bool defined = q >= 0;
      if (defined != (P.X.src[m] == P.anchor[p]))
        fail(ValidationError::Code::AnchorMismatch, {m, p},
             "action defined exactly when src(m) = anchor(p)");
      if (!defined) continue;
      if (q >= P.n_carrier)
        fail(ValidationError::Code::InvalidInput, {m, p}, "action value out of range");
      if (P.proj[q] != P.proj[p])
        fail(ValidationError::Code::AnchorMismatch, {m, p},
             "action must preserve the projection");
      if (P.anchor[q] != P.X.tgt[m])
        fail(ValidationError::Code::AnchorMismatch, {m, p},
             "action must move the anchor to tgt(m)");
    }
  }

  for (i64 p = 0; p < P.n_carrier; ++p)
    if (P.action[P.X.id_of[P.anchor[p]]][p] != p)
      fail(ValidationError::Code::NotAnAction, {p}, "identity arrow must fix points");
  for (int m = 0; m < P.X.n_arrows; ++m)
    for (int n = 0; n < P.X.n_arrows; ++n) {
      if (!P.X.composable(m, n)) continue;
      int mn = P.X.compose_raw(m, n);
      for (i64 p = 0; p < P.n_carrier; ++p) {
        if (P.anchor[p] != P.X.src[m]) continue;
        if (P.action[mn][p] != P.action[n][P.action[m][p]])
          fail(ValidationError::Code::NotAnAction, {m, n, p},
               "action does not respect composition");
      }
    }

  for (i64 p = 0; p < P.n_carrier; ++p)
    for (i64 q = 0; q < P.n_carrier; ++q) {
      if (P.proj[p] != P.proj[q]) continue;
      i64 count = 0;
      for (int m = 0; m < P.X.n_arrows; ++m)
        if (P.action[m][p] == q) ++count;
      if (count != 1)
        fail(ValidationError::Code::NotPrincipal, {p, q, count},
             "fibre transport must be unique");
    }
  return P;
}

int principal_arrow(const GroupoidTorsor& P, i64 p, i64 q) {
  if (P.proj[p] != P.proj[q])
    fail(ValidationError::Code::NotPrincipal, {p, q},
         "transport requested across different fibres");
  for (int m = 0; m < P.X.n_arrows; ++m)
    if (P.action[m][p] == q) return m;
  fail(ValidationError::Code::NotPrincipal, {p, q}, "no arrow transports p to q");
}

void validate_torsor_morphism(const GroupoidTorsor& P, const GroupoidTorsor& Q,
                              const std::vector<i64>& map) {
  if (!(P.X == Q.X) || P.n_base != Q.n_base)
    fail(ValidationError::Code::IncompatibleBases, {},
         "torsor morphisms need one groupoid and one base");
  if (static_cast<i64>(map.size()) != P.n_carrier)
    fail(ValidationError::Code::ShapeMismatch, {static_cast<i64>(map.size())},
         "morphism must cover the carrier");
  for (i64 p = 0; p < P.n_carrier; ++p) {
    i64 q = map[p];
    if (q < 0 || q >= Q.n_carrier)
      fail(ValidationError::Code::InvalidInput, {p}, "morphism value out of range");
    if (Q.proj[q] != P.proj[p])
      fail(ValidationError::Code::IncompatibleBases, {p}, "morphism must preserve proj");
    if (Q.anchor[q] != P.anchor[p])
      fail(ValidationError::Code::AnchorMismatch, {p}, "morphism must preserve anchor");
  }
  for (int m = 0; m < P.X.n_arrows; ++m)
    for (i64 p = 0; p < P.n_carrier; ++p) {
      if (P.action[m][p] < 0) continue;
      if (map[P.action[m][p]] != Q.action[m][map[p]])
        fail(ValidationError::Code::NotCompatible, {m, p},
             "morphism does not commute with the action");
    }
}

std::optional<std::vector<i64>> torsor_isomorphism(const GroupoidTorsor& P,
                                                   const GroupoidTorsor& Q) {
  if (!(P.X == Q.X) || P.n_base != Q.n_base)
    fail(ValidationError::Code::IncompatibleBases, {},
         "torsor isomorphism needs one groupoid and one base");
  if (P.n_carrier > kTorsorIsoCarrierCap || Q.n_carrier > kTorsorIsoCarrierCap)
    throw CapExceeded("torsor isomorphism search capped at carrier size " +
                      std::to_string(kTorsorIsoCarrierCap));
  if (P.n_carrier != Q.n_carrier) return std::nullopt;

  // A morphism is determined fibrewise by the image of one point; try each
  // anchor-compatible candidate in order.
  std::vector<i64> map(P.n_carrier, -1);
  for (i64 s = 0; s < P.n_base; ++s) {
    std::vector<i64> pf, qf;
    for (i64 p = 0; p < P.n_carrier; ++p)
      if (P.proj[p] == s) pf.push_back(p);
    for (i64 q = 0; q < Q.n_carrier; ++q)
      if (Q.proj[q] == s) qf.push_back(q);
    if (pf.size() != qf.size()) return std::nullopt;
    i64 p0 = pf.front();
    bool found = false;
    for (i64 q0 : qf) {
      if (Q.anchor[q0] != P.anchor[p0]) continue;
      bool ok = true;
      std::vector<i64> partial(pf.size(), -1);
      std::vector<char> used(qf.size(), 0);
      for (size_t i = 0; i < pf.size() && ok; ++i) {
        int m = principal_arrow(P, p0, pf[i]);
        i64 img = Q.action[m][q0];
        if (img < 0 || Q.anchor[img] != P.anchor[pf[i]]) {
          ok = false;
          break;
        }
        partial[i] = img;
      }
      if (!ok) continue;
      std::map<i64, char> seen;
      for (i64 v : partial)
        if (seen[v]++) {
          ok = false;
          break;
        }
      if (!ok) continue;
      for (size_t i = 0; i < pf.size(); ++i) map[pf[i]] = partial[i];
      found = true;
      break;
    }
    if (!found) return std::nullopt;
  }
  validate_torsor_morphism(P, Q, map);
  return map;
}

GroupoidTorsor pullback_torsor(const GroupoidFunctor& f, const GroupoidTorsor& P) {
  validate_morita_morphism(f);
  if (!(f.target == P.X))
    fail(ValidationError::Code::ShapeMismatch, {}, "torsor lives over the functor target");
  const Groupoid& X = f.source;
  std::vector<std::pair<int, i64>> points;
  for (int x = 0; x < X.n_objects; ++x)
    for (i64 p = 0; p < P.n_carrier; ++p)
      if (P.anchor[p] == f.f0[x]) points.emplace_back(x, p);
  std::map<std::pair<int, i64>, i64> idx;
  for (size_t i = 0; i < points.size(); ++i) idx[points[i]] = static_cast<i64>(i);

  GroupoidTorsor R;
  R.X = X;
  R.n_carrier = static_cast<i64>(points.size());
  R.n_base = P.n_base;
  R.proj.resize(R.n_carrier);
  R.anchor.resize(R.n_carrier);
  for (i64 i = 0; i < R.n_carrier; ++i) {
    R.proj[i] = P.proj[points[i].second];
    R.anchor[i] = points[i].first;
  }
  R.action.assign(X.n_arrows, std::vector<i64>(R.n_carrier, -1));
  for (int s = 0; s < X.n_arrows; ++s)
    for (i64 i = 0; i < R.n_carrier; ++i) {
      if (X.src[s] != points[i].first) continue;
      i64 moved = P.action[f.f1[s]][points[i].second];
      R.action[s][i] = idx.at({X.tgt[s], moved});
    }
  return validate_torsor(R);
}

PushforwardResult pushforward_torsor(const GroupoidFunctor& f, const GroupoidTorsor& P) {
  validate_morita_morphism(f);
  if (!(f.source == P.X))
    fail(ValidationError::Code::ShapeMismatch, {}, "torsor lives over the functor source");
  const Groupoid& X = f.source;
  const Groupoid& Y = f.target;

  std::vector<i64> parent(P.n_carrier);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<i64(i64)> find = [&](i64 v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int s = 0; s < X.n_arrows; ++s) {
    bool ident = false;
    for (int y = 0; y < Y.n_objects; ++y)
      if (f.f1[s] == Y.id_of[y]) ident = true;
    if (!ident) continue;
    for (i64 p = 0; p < P.n_carrier; ++p) {
      if (P.action[s][p] < 0) continue;
      i64 a = find(p), b = find(P.action[s][p]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<i64> point_class(P.n_carrier, -1);
  std::map<i64, i64> ids;
  for (i64 p = 0; p < P.n_carrier; ++p) {
    i64 r = find(p);
    auto it = ids.find(r);
    if (it == ids.end()) it = ids.emplace(r, static_cast<i64>(ids.size())).first;
    point_class[p] = it->second;
  }

  GroupoidTorsor R;
  R.X = Y;
  R.n_carrier = static_cast<i64>(ids.size());
  R.n_base = P.n_base;
  R.proj.assign(R.n_carrier, -1);
  R.anchor.assign(R.n_carrier, -1);
  for (i64 p = 0; p < P.n_carrier; ++p) {
    i64 c = point_class[p];
    i64 pr = P.proj[p];
    i64 an = f.f0[P.anchor[p]];
    if ((R.proj[c] >= 0 && R.proj[c] != pr) || (R.anchor[c] >= 0 && R.anchor[c] != an))
      fail(ValidationError::Code::QuotientIllDefined, {p},
           "collapsed points disagree on proj or anchor");
    R.proj[c] = pr;
    R.anchor[c] = an;
  }

  R.action.assign(Y.n_arrows, std::vector<i64>(R.n_carrier, -1));
  for (int n = 0; n < Y.n_arrows; ++n)
    for (i64 p = 0; p < P.n_carrier; ++p) {
      if (f.f0[P.anchor[p]] != Y.src[n]) continue;
      // Every f1-preimage starting at anchor(p) must agree on the class.
      for (int s = 0; s < X.n_arrows; ++s) {
        if (f.f1[s] != n || X.src[s] != P.anchor[p]) continue;
        i64 target = point_class[P.action[s][p]];
        i64& slot = R.action[n][point_class[p]];
        if (slot >= 0 && slot != target)
          fail(ValidationError::Code::QuotientIllDefined, {n, p},
               "quotient action depends on the representative");
        slot = target;
      }
    }
  for (int n = 0; n < Y.n_arrows; ++n)
    for (i64 c = 0; c < R.n_carrier; ++c)
      if ((R.action[n][c] >= 0) != (Y.src[n] == R.anchor[c]))
        fail(ValidationError::Code::QuotientIllDefined, {n, c},
             "quotient action not defined on the expected pairs");
  R = validate_torsor(R);
  return PushforwardResult{std::move(R), std::move(point_class)};
}

i64 TorsorAutomorphisms::value_of(const std::vector<i64>& map) const {
  i64 found = -1;
  for (size_t a = 0; a < maps.size(); ++a)
    if (maps[a] == map) {
      if (found >= 0)
        fail(ValidationError::Code::NonUniqueAutomorphismValue, {found, static_cast<i64>(a)},
             "two coefficients give the same automorphism");
      found = static_cast<i64>(a);
    }
  if (found < 0)
    fail(ValidationError::Code::NonUniqueAutomorphismValue, {},
         "map is not an automorphism from the bounding family");
  return found;
}

TorsorAutomorphisms torsor_automorphisms(const GroupoidTorsor& P, const BoundingFamily& fam) {
  if (!is_connected(P.X))
    fail(ValidationError::Code::NotConnected, {}, "automorphism identification needs a connected groupoid");
  validate_bounding_family(P.X, fam);
  if (auto defect = family_conjugation_defect(P.X, fam))
    fail(ValidationError::Code::NotCompatible, *defect,
         "bounding family moves under conjugation");

  TorsorAutomorphisms out;
  out.fam = fam;
  out.maps.assign(fam.A.order, std::vector<i64>(P.n_carrier, -1));
  for (i64 a = 0; a < fam.A.order; ++a)
    for (i64 p = 0; p < P.n_carrier; ++p)
      out.maps[a][p] = torsor_act(P, static_cast<int>(fam.iso[P.anchor[p]][a]), p);

  for (i64 a = 0; a < fam.A.order; ++a) {
    validate_torsor_morphism(P, P, out.maps[a]);
    for (i64 b = 0; b < fam.A.order; ++b) {
      i64 c = fam.A.add(a, b);
      for (i64 p = 0; p < P.n_carrier; ++p)
        if (out.maps[b][out.maps[a][p]] != out.maps[c][p])
          fail(ValidationError::Code::NotCompatible, {a, b, p},
               "automorphism family does not add");
    }
    for (i64 b = 0; b < a; ++b)
      if (out.maps[a] == out.maps[b])
        fail(ValidationError::Code::NonUniqueAutomorphismValue, {b, a},
             "coefficients collapse to one automorphism");
  }
  return out;
}

TorsorAutomorphisms torsor_automorphisms(const GroupoidTorsor& P, const AbelianGroup& A) {
  auto fam = bounded_by(P.X, A);
  if (!fam)
    fail(ValidationError::Code::NotBounded, {}, "groupoid is not bounded by the given group");
  return torsor_automorphisms(P, *fam);
}

GroupoidTorsor star_torsor(const Groupoid& X) {
  GroupoidQuotient q = groupoid_quotient(X);
  std::vector<int> hub(q.n_classes);
  for (int c = 0; c < q.n_classes; ++c) hub[c] = q.classes[c].front();

  std::vector<int> carrier;  // arrows into the hub of their class
  std::vector<i64> pos(X.n_arrows, -1);
  for (int m = 0; m < X.n_arrows; ++m)
    if (X.tgt[m] == hub[q.class_of[X.src[m]]]) {
      pos[m] = static_cast<i64>(carrier.size());
      carrier.push_back(m);
    }

  GroupoidTorsor P;
  P.X = X;
  P.n_carrier = static_cast<i64>(carrier.size());
  P.n_base = q.n_classes;
  P.proj.resize(P.n_carrier);
  P.anchor.resize(P.n_carrier);
  for (i64 i = 0; i < P.n_carrier; ++i) {
    P.proj[i] = q.class_of[X.src[carrier[i]]];
    P.anchor[i] = X.src[carrier[i]];
  }
  P.action.assign(X.n_arrows, std::vector<i64>(P.n_carrier, -1));
  for (int s = 0; s < X.n_arrows; ++s)
    for (i64 i = 0; i < P.n_carrier; ++i) {
      if (X.src[s] != P.anchor[i]) continue;
      P.action[s][i] = pos[X.compose(X.inv[s], carrier[i])];
    }
  return validate_torsor(P);
}

std::optional<GroupoidTorsor> find_torsor_over_quotient(const Groupoid& X) {
  return star_torsor(X);
}

}  // namespace gclab
