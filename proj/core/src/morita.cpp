#include "gclab/morita.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "gclab/caps.hpp"
#include "gclab/torsor.hpp"

namespace gclab {

GroupoidFunctor validate_functor(const GroupoidFunctor& f) {
  const Groupoid& X = f.source;
  const Groupoid& Y = f.target;
  validate_groupoid(X);
  validate_groupoid(Y);
  if (static_cast<int>(f.f0.size()) != X.n_objects ||
      static_cast<int>(f.f1.size()) != X.n_arrows)
    fail(ValidationError::Code::ShapeMismatch, {}, "functor map sizes disagree");
  for (int x = 0; x < X.n_objects; ++x)
    if (f.f0[x] < 0 || f.f0[x] >= Y.n_objects)
      fail(ValidationError::Code::InvalidInput, {x}, "object image out of range");
  for (int m = 0; m < X.n_arrows; ++m) {
    if (f.f1[m] < 0 || f.f1[m] >= Y.n_arrows)
      fail(ValidationError::Code::InvalidInput, {m}, "arrow image out of range");
    if (Y.src[f.f1[m]] != f.f0[X.src[m]] || Y.tgt[f.f1[m]] != f.f0[X.tgt[m]])
      fail(ValidationError::Code::NotFunctorial, {m}, "arrow image endpoints disagree");
  }
  for (int x = 0; x < X.n_objects; ++x)
    if (f.f1[X.id_of[x]] != Y.id_of[f.f0[x]])
      fail(ValidationError::Code::NotFunctorial, {x}, "identities are not preserved");
  for (int m = 0; m < X.n_arrows; ++m)
    for (int n = 0; n < X.n_arrows; ++n) {
      if (!X.composable(m, n)) continue;
      if (f.f1[X.compose_raw(m, n)] != Y.compose(f.f1[m], f.f1[n]))
        fail(ValidationError::Code::NotFunctorial, {m, n}, "composites are not preserved");
    }
  return f;
}

GroupoidFunctor validate_morita_morphism(const GroupoidFunctor& f) {
  validate_functor(f);
  const Groupoid& X = f.source;
  const Groupoid& Y = f.target;
  std::vector<char> hit(Y.n_objects, 0);
  for (int x = 0; x < X.n_objects; ++x) hit[f.f0[x]] = 1;
  for (int y = 0; y < Y.n_objects; ++y)
    if (!hit[y])
      fail(ValidationError::Code::NotSurjectiveOnObjects, {y}, "object missed by the functor");
  for (int x = 0; x < X.n_objects; ++x)
    for (int x2 = 0; x2 < X.n_objects; ++x2) {
      std::vector<int> dom = hom_set(X, x, x2);
      std::vector<int> cod = hom_set(Y, f.f0[x], f.f0[x2]);
      if (dom.size() != cod.size())
        fail(ValidationError::Code::NotFullyFaithful, {x, x2},
             "hom-set sizes differ under the functor");
      std::vector<char> seen(Y.n_arrows, 0);
      for (int m : dom) {
        if (seen[f.f1[m]])
          fail(ValidationError::Code::NotFullyFaithful, {x, x2},
               "functor identifies two parallel arrows");
        seen[f.f1[m]] = 1;
      }
    }
  return f;
}

GroupoidFunctor identity_functor(const Groupoid& X) {
  GroupoidFunctor f;
  f.source = X;
  f.target = X;
  f.f0.resize(X.n_objects);
  f.f1.resize(X.n_arrows);
  std::iota(f.f0.begin(), f.f0.end(), 0);
  std::iota(f.f1.begin(), f.f1.end(), 0);
  return f;
}

namespace {

GroupoidTorsor left_torsor_view(const Bitorsor& Q) {
  GroupoidTorsor P;
  P.X = Q.X;
  P.n_carrier = Q.n_carrier;
  P.n_base = Q.Y.n_objects;
  P.proj.assign(Q.r.begin(), Q.r.end());
  P.anchor.assign(Q.l.begin(), Q.l.end());
  P.action.resize(Q.act_x.size());
  for (size_t m = 0; m < Q.act_x.size(); ++m)
    P.action[m].assign(Q.act_x[m].begin(), Q.act_x[m].end());
  return P;
}

GroupoidTorsor right_torsor_view(const Bitorsor& Q) {
  GroupoidTorsor P;
  P.X = Q.Y;
  P.n_carrier = Q.n_carrier;
  P.n_base = Q.X.n_objects;
  P.proj.assign(Q.l.begin(), Q.l.end());
  P.anchor.assign(Q.r.begin(), Q.r.end());
  P.action.resize(Q.act_y.size());
  for (size_t n = 0; n < Q.act_y.size(); ++n)
    P.action[n].assign(Q.act_y[n].begin(), Q.act_y[n].end());
  return P;
}

}  // namespace

void validate_bitorsor(const Bitorsor& Q) {
  validate_torsor(left_torsor_view(Q));
  validate_torsor(right_torsor_view(Q));
  for (int m = 0; m < Q.X.n_arrows; ++m)
    for (int n = 0; n < Q.Y.n_arrows; ++n)
      for (int q = 0; q < Q.n_carrier; ++q) {
        if (Q.act_x[m][q] < 0 || Q.act_y[n][q] < 0) continue;
        if (Q.act_y[n][Q.act_x[m][q]] != Q.act_x[m][Q.act_y[n][q]])
          fail(ValidationError::Code::NotCompatible, {m, n, q},
               "left and right actions do not commute");
      }
}

Bitorsor bitorsor_from_morphism(const GroupoidFunctor& f) {
  validate_morita_morphism(f);
  const Groupoid& X = f.source;
  const Groupoid& Y = f.target;

  std::vector<std::pair<int, int>> points;  // (Y arrow m, X object x)
  for (int m = 0; m < Y.n_arrows; ++m)
    for (int x = 0; x < X.n_objects; ++x)
      if (Y.src[m] == f.f0[x]) points.emplace_back(m, x);
  std::map<std::pair<int, int>, int> idx;
  for (size_t i = 0; i < points.size(); ++i) idx[points[i]] = static_cast<int>(i);

  Bitorsor Q;
  Q.X = X;
  Q.Y = Y;
  Q.n_carrier = static_cast<int>(points.size());
  Q.l.resize(Q.n_carrier);
  Q.r.resize(Q.n_carrier);
  for (int i = 0; i < Q.n_carrier; ++i) {
    Q.l[i] = points[i].second;
    Q.r[i] = Y.tgt[points[i].first];
  }
  Q.act_x.assign(X.n_arrows, std::vector<int>(Q.n_carrier, -1));
  for (int s = 0; s < X.n_arrows; ++s)
    for (int i = 0; i < Q.n_carrier; ++i) {
      if (X.src[s] != points[i].second) continue;
      int moved = Y.compose(f.f1[X.inv[s]], points[i].first);
      Q.act_x[s][i] = idx.at({moved, X.tgt[s]});
    }
  Q.act_y.assign(Y.n_arrows, std::vector<int>(Q.n_carrier, -1));
  for (int n = 0; n < Y.n_arrows; ++n)
    for (int i = 0; i < Q.n_carrier; ++i) {
      if (Y.src[n] != Y.tgt[points[i].first]) continue;
      Q.act_y[n][i] = idx.at({Y.compose(points[i].first, n), points[i].second});
    }
  validate_bitorsor(Q);
  return Q;
}

LinkingGroupoid linking_groupoid(const Bitorsor& Q) {
  validate_bitorsor(Q);
  const Groupoid& X = Q.X;
  const Groupoid& Y = Q.Y;
  GroupoidTorsor left = left_torsor_view(Q);
  GroupoidTorsor right = right_torsor_view(Q);

  LinkingGroupoid L;
  L.q_offset = X.n_arrows;
  L.qinv_offset = X.n_arrows + Q.n_carrier;
  L.y_arrow_offset = X.n_arrows + 2 * Q.n_carrier;
  const int nW = L.y_arrow_offset + Y.n_arrows;
  if (nW > kGroupoidArrowCap)
    throw CapExceeded("linking groupoid needs " + std::to_string(nW) + " arrows");

  Groupoid W;
  W.n_objects = X.n_objects + Y.n_objects;
  W.n_arrows = nW;
  W.src.resize(nW);
  W.tgt.resize(nW);
  W.inv.resize(nW);
  W.id_of.resize(W.n_objects);
  for (int m = 0; m < X.n_arrows; ++m) {
    W.src[m] = X.src[m];
    W.tgt[m] = X.tgt[m];
    W.inv[m] = X.inv[m];
  }
  for (int q = 0; q < Q.n_carrier; ++q) {
    W.src[L.q_offset + q] = Q.l[q];
    W.tgt[L.q_offset + q] = X.n_objects + Q.r[q];
    W.inv[L.q_offset + q] = L.qinv_offset + q;
    W.src[L.qinv_offset + q] = X.n_objects + Q.r[q];
    W.tgt[L.qinv_offset + q] = Q.l[q];
    W.inv[L.qinv_offset + q] = L.q_offset + q;
  }
  for (int n = 0; n < Y.n_arrows; ++n) {
    W.src[L.y_arrow_offset + n] = X.n_objects + Y.src[n];
    W.tgt[L.y_arrow_offset + n] = X.n_objects + Y.tgt[n];
    W.inv[L.y_arrow_offset + n] = L.y_arrow_offset + Y.inv[n];
  }
  for (int x = 0; x < X.n_objects; ++x) W.id_of[x] = X.id_of[x];
  for (int y = 0; y < Y.n_objects; ++y)
    W.id_of[X.n_objects + y] = L.y_arrow_offset + Y.id_of[y];

  W.table.assign(static_cast<size_t>(nW) * nW, -1);
  auto put = [&](int f, int g, int h) { W.table[static_cast<size_t>(f) * nW + g] = h; };
  for (int f = 0; f < nW; ++f)
    for (int g = 0; g < nW; ++g) {
      if (W.tgt[f] != W.src[g]) continue;
      bool fX = f < L.q_offset;
      bool fQ = f >= L.q_offset && f < L.qinv_offset;
      bool fR = f >= L.qinv_offset && f < L.y_arrow_offset;
      bool gX = g < L.q_offset;
      bool gQ = g >= L.q_offset && g < L.qinv_offset;
      bool gR = g >= L.qinv_offset && g < L.y_arrow_offset;
      if (fX && gX) {
        put(f, g, X.compose(f, g));
      } else if (fX && gQ) {
        put(f, g, L.q_offset + static_cast<int>(torsor_act(left, X.inv[f], g - L.q_offset)));
      } else if (fQ && !gX && !gQ && !gR) {
        put(f, g, L.q_offset +
                      static_cast<int>(torsor_act(right, g - L.y_arrow_offset, f - L.q_offset)));
      } else if (fQ && gR) {
        // l(f) -> r(f) followed by r(g) -> l(g): the X arrow transporting
        // g's source point onto f in the left torsor, inverted.
        int m = principal_arrow(left, g - L.qinv_offset, f - L.q_offset);
        put(f, g, X.inv[m]);
      } else if (fR && gQ) {
        int n = principal_arrow(right, f - L.qinv_offset, g - L.q_offset);
        put(f, g, L.y_arrow_offset + n);
      } else if (!fX && !fQ && !fR && gR) {
        int moved = static_cast<int>(
            torsor_act(right, Y.inv[f - L.y_arrow_offset], g - L.qinv_offset));
        put(f, g, L.qinv_offset + moved);
      } else if (fR && gX) {
        int moved = static_cast<int>(torsor_act(left, g, f - L.qinv_offset));
        put(f, g, L.qinv_offset + moved);
      } else if (!fX && !fQ && !fR && !gX && !gQ && !gR) {
        put(f, g, L.y_arrow_offset + Y.compose(f - L.y_arrow_offset, g - L.y_arrow_offset));
      }
    }

  try {
    L.W = validate_groupoid(W);
  } catch (const ValidationError& e) {
    fail(ValidationError::Code::CompositionIncoherent, e.witness(),
         std::string("bitorsor composition fails groupoid axioms: ") + e.what());
  }

  L.embed_x.source = X;
  L.embed_x.target = L.W;
  L.embed_x.f0.resize(X.n_objects);
  std::iota(L.embed_x.f0.begin(), L.embed_x.f0.end(), 0);
  L.embed_x.f1.resize(X.n_arrows);
  std::iota(L.embed_x.f1.begin(), L.embed_x.f1.end(), 0);
  L.embed_y.source = Y;
  L.embed_y.target = L.W;
  L.embed_y.f0.resize(Y.n_objects);
  L.embed_y.f1.resize(Y.n_arrows);
  for (int y = 0; y < Y.n_objects; ++y) L.embed_y.f0[y] = X.n_objects + y;
  for (int n = 0; n < Y.n_arrows; ++n) L.embed_y.f1[n] = L.y_arrow_offset + n;

  // The embeddings are fully faithful functors and each meets every class.
  for (const GroupoidFunctor* e : {&L.embed_x, &L.embed_y}) {
    validate_functor(*e);
    const Groupoid& S = e->source;
    for (int a = 0; a < S.n_objects; ++a)
      for (int b = 0; b < S.n_objects; ++b)
        if (hom_set(S, a, b).size() != hom_set(L.W, e->f0[a], e->f0[b]).size())
          fail(ValidationError::Code::NotFullyFaithful, {a, b},
               "linking embedding is not fully faithful");
  }
  GroupoidQuotient wq = groupoid_quotient(L.W);
  for (int c = 0; c < wq.n_classes; ++c) {
    bool from_x = false, from_y = false;
    for (int v : wq.classes[c]) {
      if (v < X.n_objects) from_x = true;
      else from_y = true;
    }
    if (!from_x || !from_y)
      fail(ValidationError::Code::NotSurjectiveOnObjects, {c},
           "linking embedding misses an isomorphism class");
  }
  return L;
}

std::optional<Bitorsor> are_morita_equivalent(const Groupoid& X, const Groupoid& Y) {
  validate_groupoid(X);
  validate_groupoid(Y);
  GroupoidQuotient qx = groupoid_quotient(X);
  GroupoidQuotient qy = groupoid_quotient(Y);
  if (qx.n_classes != qy.n_classes) return std::nullopt;
  const int k = qx.n_classes;

  // Vertex groups of the class base points, plus pairwise isomorphisms.
  std::vector<VertexGroup> vx(k), vy(k);
  for (int c = 0; c < k; ++c) {
    vx[c] = vertex_group(X, qx.classes[c].front());
    vy[c] = vertex_group(Y, qy.classes[c].front());
  }
  std::vector<std::vector<std::optional<std::vector<int>>>> iso(k);
  for (int a = 0; a < k; ++a) {
    iso[a].resize(k);
    for (int b = 0; b < k; ++b)
      if (vx[a].group.order == vy[b].group.order)
        iso[a][b] = group_isomorphism(vx[a].group, vy[b].group);
  }

  // Lexicographically first perfect matching of classes.
  std::vector<int> match(k, -1);
  std::vector<char> used(k, 0);
  std::function<bool(int)> assign = [&](int a) {
    if (a == k) return true;
    for (int b = 0; b < k; ++b) {
      if (used[b] || !iso[a][b]) continue;
      match[a] = b;
      used[b] = 1;
      if (assign(a + 1)) return true;
      used[b] = 0;
      match[a] = -1;
    }
    return false;
  };
  if (!assign(0)) return std::nullopt;

  // Certificate: per matched class pair, pairs (u, v) of arrows out of the
  // base points, identified when a base loop moves one onto the other through
  // the vertex isomorphism.
  struct Point {
    int cls;
    int u, v;  // X arrow from x_c, Y arrow from y_c
  };
  std::vector<Point> reps;
  std::map<std::tuple<int, int, int>, int> class_of_pair;
  for (int c = 0; c < k; ++c) {
    int xc = qx.classes[c].front();
    int yc = qy.classes[match[c]].front();
    const std::vector<int>& phi = *iso[c][match[c]];
    std::vector<int> us, vs;
    for (int m = 0; m < X.n_arrows; ++m)
      if (X.src[m] == xc) us.push_back(m);
    for (int n = 0; n < Y.n_arrows; ++n)
      if (Y.src[n] == yc) vs.push_back(n);
    std::map<std::pair<int, int>, int> pid;
    for (size_t i = 0; i < us.size(); ++i)
      for (size_t j = 0; j < vs.size(); ++j)
        pid[{us[i], vs[j]}] = static_cast<int>(i * vs.size() + j);
    std::vector<int> parent(us.size() * vs.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (size_t ai = 0; ai < vx[c].arrows.size(); ++ai) {
      int alpha = vx[c].arrows[ai];
      int beta = vy[match[c]].arrows[phi[ai]];
      for (int u : us)
        for (int v : vs) {
          int p = pid.at({u, v});
          int q = pid.at({X.compose(alpha, u), Y.compose(beta, v)});
          int rp = find(p), rq = find(q);
          if (rp != rq) parent[std::max(rp, rq)] = std::min(rp, rq);
        }
    }
    std::map<int, int> ids;
    for (int u : us)
      for (int v : vs) {
        int r = find(pid.at({u, v}));
        auto it = ids.find(r);
        if (it == ids.end()) {
          it = ids.emplace(r, static_cast<int>(reps.size())).first;
          reps.push_back(Point{c, u, v});
        }
        class_of_pair[{c, u, v}] = it->second;
      }
  }

  Bitorsor Q;
  Q.X = X;
  Q.Y = Y;
  Q.n_carrier = static_cast<int>(reps.size());
  Q.l.resize(Q.n_carrier);
  Q.r.resize(Q.n_carrier);
  for (int i = 0; i < Q.n_carrier; ++i) {
    Q.l[i] = X.tgt[reps[i].u];
    Q.r[i] = Y.tgt[reps[i].v];
  }
  Q.act_x.assign(X.n_arrows, std::vector<int>(Q.n_carrier, -1));
  Q.act_y.assign(Y.n_arrows, std::vector<int>(Q.n_carrier, -1));
  for (int i = 0; i < Q.n_carrier; ++i) {
    for (int s = 0; s < X.n_arrows; ++s)
      if (X.src[s] == Q.l[i])
        Q.act_x[s][i] = class_of_pair.at({reps[i].cls, X.compose(reps[i].u, s), reps[i].v});
    for (int n = 0; n < Y.n_arrows; ++n)
      if (Y.src[n] == Q.r[i])
        Q.act_y[n][i] = class_of_pair.at({reps[i].cls, reps[i].u, Y.compose(reps[i].v, n)});
  }
  validate_bitorsor(Q);
  return Q;
}

}  // namespace gclab
