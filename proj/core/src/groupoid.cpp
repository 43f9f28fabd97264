#include "gclab/groupoid.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "gclab/caps.hpp"

namespace gclab {

int Groupoid::compose(int f, int g) const {
  int r = compose_raw(f, g);
  if (r < 0)
    fail(ValidationError::Code::BadComposability, {f, g},
         "composite requested for a non-composable pair");
  return r;
}

Groupoid validate_groupoid(const Groupoid& raw) {
  const Groupoid& X = raw;
  if (X.n_objects <= 0)
    fail(ValidationError::Code::InvalidInput, {X.n_objects}, "groupoid needs objects");
  if (X.n_arrows <= 0 || X.n_arrows > kGroupoidArrowCap)
    fail(ValidationError::Code::InvalidInput, {X.n_arrows},
         "arrow count must be in 1.." + std::to_string(kGroupoidArrowCap));
  if (static_cast<int>(X.src.size()) != X.n_arrows ||
      static_cast<int>(X.tgt.size()) != X.n_arrows ||
      static_cast<int>(X.inv.size()) != X.n_arrows ||
      static_cast<int>(X.id_of.size()) != X.n_objects ||
      X.table.size() != static_cast<size_t>(X.n_arrows) * X.n_arrows)
    fail(ValidationError::Code::ShapeMismatch, {}, "groupoid table sizes disagree");
  for (int f = 0; f < X.n_arrows; ++f) {
    if (X.src[f] < 0 || X.src[f] >= X.n_objects || X.tgt[f] < 0 || X.tgt[f] >= X.n_objects)
      fail(ValidationError::Code::InvalidInput, {f}, "arrow endpoint out of range");
    if (X.inv[f] < 0 || X.inv[f] >= X.n_arrows)
      fail(ValidationError::Code::InvalidInput, {f}, "inverse out of range");
  }
  for (int x = 0; x < X.n_objects; ++x)
    if (X.id_of[x] < 0 || X.id_of[x] >= X.n_arrows)
      fail(ValidationError::Code::InvalidInput, {x}, "identity arrow out of range");

  for (int f = 0; f < X.n_arrows; ++f)
    for (int g = 0; g < X.n_arrows; ++g) {
      int c = X.compose_raw(f, g);
      if ((c >= 0) != X.composable(f, g))
        fail(ValidationError::Code::BadComposability, {f, g},
             "composite defined exactly on composable pairs");
      if (c >= 0) {
        if (c >= X.n_arrows)
          fail(ValidationError::Code::InvalidInput, {f, g, c}, "composite out of range");
        if (X.src[c] != X.src[f] || X.tgt[c] != X.tgt[g])
          fail(ValidationError::Code::BadComposability, {f, g},
               "composite endpoints do not chain");
      }
    }

  for (int f = 0; f < X.n_arrows; ++f)
    for (int g = 0; g < X.n_arrows; ++g) {
      if (!X.composable(f, g)) continue;
      int fg = X.compose_raw(f, g);
      for (int h = 0; h < X.n_arrows; ++h) {
        if (!X.composable(g, h)) continue;
        if (X.compose_raw(fg, h) != X.compose_raw(f, X.compose_raw(g, h)))
          fail(ValidationError::Code::NotAssociative, {f, g, h},
               "composition is not associative");
      }
    }

  for (int x = 0; x < X.n_objects; ++x) {
    int i = X.id_of[x];
    if (X.src[i] != x || X.tgt[i] != x)
      fail(ValidationError::Code::BadIdentity, {x}, "identity arrow is not a loop");
    for (int f = 0; f < X.n_arrows; ++f) {
      if (X.tgt[f] == x && X.compose_raw(f, i) != f)
        fail(ValidationError::Code::BadIdentity, {x}, "identity is not right neutral");
      if (X.src[f] == x && X.compose_raw(i, f) != f)
        fail(ValidationError::Code::BadIdentity, {x}, "identity is not left neutral");
    }
  }

  for (int f = 0; f < X.n_arrows; ++f) {
    int g = X.inv[f];
    if (X.src[g] != X.tgt[f] || X.tgt[g] != X.src[f])
      fail(ValidationError::Code::BadInverse, {f}, "inverse endpoints do not swap");
    if (X.compose_raw(f, g) != X.id_of[X.src[f]] || X.compose_raw(g, f) != X.id_of[X.tgt[f]])
      fail(ValidationError::Code::BadInverse, {f}, "inverse is not two-sided");
  }
  return X;
}

Groupoid assemble_groupoid(int n_objects, std::vector<int> src, std::vector<int> tgt,
                           const std::vector<std::array<int, 3>>& compose_triples) {
  Groupoid X;
  X.n_objects = n_objects;
  X.n_arrows = static_cast<int>(src.size());
  if (tgt.size() != src.size())
    fail(ValidationError::Code::ShapeMismatch,
         {static_cast<i64>(src.size()), static_cast<i64>(tgt.size())},
         "src and tgt lists disagree");
  if (X.n_arrows <= 0 || X.n_arrows > kGroupoidArrowCap)
    fail(ValidationError::Code::InvalidInput, {X.n_arrows},
         "arrow count must be in 1.." + std::to_string(kGroupoidArrowCap));
  X.src = std::move(src);
  X.tgt = std::move(tgt);
  for (int f = 0; f < X.n_arrows; ++f)
    if (X.src[f] < 0 || X.src[f] >= n_objects || X.tgt[f] < 0 || X.tgt[f] >= n_objects)
      fail(ValidationError::Code::InvalidInput, {f}, "arrow endpoint out of range");
  X.table.assign(static_cast<size_t>(X.n_arrows) * X.n_arrows, -1);
  for (const auto& t : compose_triples) {
    auto [f, g, h] = t;
    if (f < 0 || f >= X.n_arrows || g < 0 || g >= X.n_arrows || h < 0 || h >= X.n_arrows)
      fail(ValidationError::Code::InvalidInput, {f, g, h}, "composition triple out of range");
    if (!X.composable(f, g))
      fail(ValidationError::Code::BadComposability, {f, g},
           "composition listed for a non-composable pair");
    int& slot = X.table[static_cast<size_t>(f) * X.n_arrows + g];
    if (slot >= 0 && slot != h)
      fail(ValidationError::Code::BadComposability, {f, g},
           "conflicting composition triples");
    slot = h;
  }
  for (int f = 0; f < X.n_arrows; ++f)
    for (int g = 0; g < X.n_arrows; ++g)
      if (X.composable(f, g) && X.compose_raw(f, g) < 0)
        fail(ValidationError::Code::BadComposability, {f, g},
             "composable pair missing a composition triple");

  X.id_of.assign(n_objects, -1);
  for (int x = 0; x < n_objects; ++x) {
    for (int i = 0; i < X.n_arrows && X.id_of[x] < 0; ++i) {
      if (X.src[i] != x || X.tgt[i] != x) continue;
      bool ok = true;
      for (int f = 0; f < X.n_arrows && ok; ++f) {
        if (X.tgt[f] == x && X.compose_raw(f, i) != f) ok = false;
        if (X.src[f] == x && X.compose_raw(i, f) != f) ok = false;
      }
      if (ok) X.id_of[x] = i;
    }
    if (X.id_of[x] < 0)
      fail(ValidationError::Code::BadIdentity, {x}, "no identity arrow at object");
  }

  X.inv.assign(X.n_arrows, -1);
  for (int f = 0; f < X.n_arrows; ++f) {
    for (int g = 0; g < X.n_arrows; ++g) {
      if (X.src[g] != X.tgt[f] || X.tgt[g] != X.src[f]) continue;
      if (X.compose_raw(f, g) == X.id_of[X.src[f]] &&
          X.compose_raw(g, f) == X.id_of[X.tgt[f]]) {
        X.inv[f] = g;
        break;
      }
    }
    if (X.inv[f] < 0)
      fail(ValidationError::Code::BadInverse, {f}, "arrow has no two-sided inverse");
  }
  return validate_groupoid(X);
}

Groupoid one_object_groupoid(const FiniteGroup& G) {
  Groupoid X;
  X.n_objects = 1;
  X.n_arrows = G.order;
  X.src.assign(G.order, 0);
  X.tgt.assign(G.order, 0);
  X.table.resize(static_cast<size_t>(G.order) * G.order);
  for (int a = 0; a < G.order; ++a)
    for (int b = 0; b < G.order; ++b)
      X.table[static_cast<size_t>(a) * G.order + b] = G.op(a, b);
  X.inv = G.inverse;
  X.id_of = {G.identity};
  return validate_groupoid(X);
}

Groupoid discrete_groupoid(int n) {
  std::vector<std::vector<int>> blocks(n);
  for (int i = 0; i < n; ++i) blocks[i] = {i};
  return equivalence_relation_groupoid(blocks);
}

Groupoid pair_groupoid(int n) {
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  return equivalence_relation_groupoid({all});
}

Groupoid equivalence_relation_groupoid(const std::vector<std::vector<int>>& blocks) {
  int n = 0;
  for (const auto& b : blocks) n += static_cast<int>(b.size());
  std::vector<int> block_of(n, -1);
  for (size_t c = 0; c < blocks.size(); ++c)
    for (int x : blocks[c]) {
      if (x < 0 || x >= n || block_of[x] >= 0)
        fail(ValidationError::Code::InvalidInput, {x}, "blocks must partition 0..n-1");
      block_of[x] = static_cast<int>(c);
    }

  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (block_of[x] == block_of[y]) pairs.emplace_back(x, y);
  std::map<std::pair<int, int>, int> idx;
  for (size_t i = 0; i < pairs.size(); ++i) idx[pairs[i]] = static_cast<int>(i);

  Groupoid X;
  X.n_objects = n;
  X.n_arrows = static_cast<int>(pairs.size());
  if (X.n_arrows > kGroupoidArrowCap)
    throw CapExceeded("equivalence relation needs " + std::to_string(X.n_arrows) +
                      " arrows, over the cap");
  X.src.resize(X.n_arrows);
  X.tgt.resize(X.n_arrows);
  X.inv.resize(X.n_arrows);
  X.id_of.resize(n);
  X.table.assign(static_cast<size_t>(X.n_arrows) * X.n_arrows, -1);
  for (int f = 0; f < X.n_arrows; ++f) {
    X.src[f] = pairs[f].first;
    X.tgt[f] = pairs[f].second;
    X.inv[f] = idx.at({pairs[f].second, pairs[f].first});
  }
  for (int x = 0; x < n; ++x) X.id_of[x] = idx.at({x, x});
  for (int f = 0; f < X.n_arrows; ++f)
    for (int g = 0; g < X.n_arrows; ++g)
      if (X.composable(f, g))
        X.table[static_cast<size_t>(f) * X.n_arrows + g] =
            idx.at({pairs[f].first, pairs[g].second});
  return validate_groupoid(X);
}

Groupoid action_groupoid(const FiniteGroup& G, const std::vector<std::vector<i64>>& action) {
  if (static_cast<int>(action.size()) != G.order)
    fail(ValidationError::Code::ShapeMismatch, {static_cast<i64>(action.size())},
         "one action row per group element");
  const int nx = action.empty() ? 0 : static_cast<int>(action[0].size());
  if (nx <= 0) fail(ValidationError::Code::InvalidInput, {}, "action set is empty");
  for (int g = 0; g < G.order; ++g) {
    if (static_cast<int>(action[g].size()) != nx)
      fail(ValidationError::Code::ShapeMismatch, {g}, "ragged action table");
    for (int x = 0; x < nx; ++x)
      if (action[g][x] < 0 || action[g][x] >= nx)
        fail(ValidationError::Code::NotAnAction, {g, x}, "action value out of range");
  }
  for (int x = 0; x < nx; ++x)
    if (action[G.identity][x] != x)
      fail(ValidationError::Code::NotAnAction, {x}, "identity must act trivially");
  for (int g = 0; g < G.order; ++g)
    for (int h = 0; h < G.order; ++h)
      for (int x = 0; x < nx; ++x)
        if (action[G.op(g, h)][x] != action[g][action[h][x]])
          fail(ValidationError::Code::NotAnAction, {g, h, x},
               "action does not respect the group law");

  const i64 n_arr = static_cast<i64>(G.order) * nx;
  if (n_arr > kGroupoidArrowCap)
    throw CapExceeded("action groupoid needs " + std::to_string(n_arr) +
                      " arrows, over the cap");
  Groupoid X;
  X.n_objects = nx;
  X.n_arrows = static_cast<int>(n_arr);
  X.src.resize(X.n_arrows);
  X.tgt.resize(X.n_arrows);
  X.inv.resize(X.n_arrows);
  X.id_of.resize(nx);
  X.table.assign(static_cast<size_t>(X.n_arrows) * X.n_arrows, -1);
  auto aid = [&](int g, int x) { return g * nx + x; };
  for (int g = 0; g < G.order; ++g)
    for (int x = 0; x < nx; ++x) {
      int f = aid(g, x);
      X.src[f] = x;
      X.tgt[f] = static_cast<int>(action[g][x]);
      X.inv[f] = aid(G.inv(g), static_cast<int>(action[g][x]));
    }
  for (int x = 0; x < nx; ++x) X.id_of[x] = aid(G.identity, x);
  // (g, x): x -> g.x followed by (h, g.x): g.x -> hg.x is (hg, x).
  for (int g = 0; g < G.order; ++g)
    for (int x = 0; x < nx; ++x)
      for (int h = 0; h < G.order; ++h) {
        int f1 = aid(g, x);
        int f2 = aid(h, static_cast<int>(action[g][x]));
        X.table[static_cast<size_t>(f1) * X.n_arrows + f2] = aid(G.op(h, g), x);
      }
  return validate_groupoid(X);
}

GroupoidQuotient groupoid_quotient(const Groupoid& X) {
  std::vector<int> parent(X.n_objects);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int f = 0; f < X.n_arrows; ++f) {
    int a = find(X.src[f]), b = find(X.tgt[f]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  GroupoidQuotient q;
  q.class_of.resize(X.n_objects);
  std::map<int, int> ids;
  for (int x = 0; x < X.n_objects; ++x) {
    int r = find(x);
    auto it = ids.find(r);
    if (it == ids.end()) it = ids.emplace(r, static_cast<int>(ids.size())).first;
    q.class_of[x] = it->second;
  }
  q.n_classes = static_cast<int>(ids.size());
  q.classes.resize(q.n_classes);
  for (int x = 0; x < X.n_objects; ++x) q.classes[q.class_of[x]].push_back(x);
  return q;
}

bool is_connected(const Groupoid& X) { return groupoid_quotient(X).n_classes == 1; }

std::vector<int> hom_set(const Groupoid& X, int x, int y) {
  std::vector<int> out;
  for (int f = 0; f < X.n_arrows; ++f)
    if (X.src[f] == x && X.tgt[f] == y) out.push_back(f);
  return out;
}

VertexGroup vertex_group(const Groupoid& X, int x) {
  VertexGroup v;
  v.arrows = hom_set(X, x, x);
  std::map<int, int> pos;
  for (size_t i = 0; i < v.arrows.size(); ++i) pos[v.arrows[i]] = static_cast<int>(i);
  int n = static_cast<int>(v.arrows.size());
  std::vector<int> cayley(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cayley[static_cast<size_t>(i) * n + j] = pos.at(X.compose(v.arrows[i], v.arrows[j]));
  v.group = validate_group(n, std::move(cayley));
  return v;
}

std::vector<int> spanning_paths(const Groupoid& X) {
  std::vector<int> path(X.n_objects, -1);
  for (int root = 0; root < X.n_objects; ++root) {
    if (path[root] >= 0) continue;
    path[root] = X.id_of[root];
    std::vector<int> queue = {root};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int y = queue[qi];
      for (int f = 0; f < X.n_arrows; ++f) {
        if (X.src[f] == y && path[X.tgt[f]] < 0) {
          path[X.tgt[f]] = X.compose(path[y], f);
          queue.push_back(X.tgt[f]);
        }
        if (X.tgt[f] == y && path[X.src[f]] < 0) {
          path[X.src[f]] = X.compose(path[y], X.inv[f]);
          queue.push_back(X.src[f]);
        }
      }
    }
  }
  return path;
}

namespace {

std::optional<std::vector<std::vector<i64>>> bounded_family_impl(const Groupoid& X,
                                                                 const FiniteGroup& A) {
  for (int x = 0; x < X.n_objects; ++x)
    if (static_cast<int>(hom_set(X, x, x).size()) != A.order) return std::nullopt;

  std::vector<int> path = spanning_paths(X);
  GroupoidQuotient q = groupoid_quotient(X);
  std::vector<std::vector<i64>> iso(X.n_objects);
  for (int c = 0; c < q.n_classes; ++c) {
    int root = q.classes[c].front();
    VertexGroup v = vertex_group(X, root);
    auto phi = group_isomorphism(A, v.group);
    if (!phi) return std::nullopt;
    for (int x : q.classes[c]) {
      iso[x].resize(A.order);
      int down = X.inv[path[x]];  // x -> root
      for (int a = 0; a < A.order; ++a) {
        int loop = v.arrows[(*phi)[a]];
        iso[x][a] = X.compose(X.compose(down, loop), path[x]);
      }
    }
  }
  return iso;
}

}  // namespace

std::optional<std::vector<std::vector<i64>>> bounded_by(const Groupoid& X,
                                                        const FiniteGroup& A) {
  return bounded_family_impl(X, A);
}

std::optional<BoundingFamily> bounded_by(const Groupoid& X, const AbelianGroup& A) {
  auto iso = bounded_family_impl(X, A.to_group());
  if (!iso) return std::nullopt;
  BoundingFamily fam{A, std::move(*iso)};
  validate_bounding_family(X, fam);
  return fam;
}

void validate_bounding_family(const Groupoid& X, const BoundingFamily& fam) {
  if (static_cast<int>(fam.iso.size()) != X.n_objects)
    fail(ValidationError::Code::ShapeMismatch, {static_cast<i64>(fam.iso.size())},
         "one vertex isomorphism per object");
  for (int x = 0; x < X.n_objects; ++x) {
    if (static_cast<i64>(fam.iso[x].size()) != fam.A.order)
      fail(ValidationError::Code::NotBounded, {x}, "vertex map does not cover A");
    if (static_cast<i64>(hom_set(X, x, x).size()) != fam.A.order)
      fail(ValidationError::Code::NotBounded, {x},
           "vertex group order differs from |A|");
    std::vector<char> seen(X.n_arrows, 0);
    for (i64 a = 0; a < fam.A.order; ++a) {
      i64 f = fam.iso[x][a];
      if (f < 0 || f >= X.n_arrows || X.src[f] != x || X.tgt[f] != x)
        fail(ValidationError::Code::NotBounded, {x, a}, "vertex map image is not a loop");
      if (seen[f]) fail(ValidationError::Code::NotBounded, {x, a}, "vertex map repeats a loop");
      seen[f] = 1;
    }
    for (i64 a = 0; a < fam.A.order; ++a)
      for (i64 b = 0; b < fam.A.order; ++b)
        if (fam.iso[x][fam.A.add(a, b)] !=
            X.compose(static_cast<int>(fam.iso[x][a]), static_cast<int>(fam.iso[x][b])))
          fail(ValidationError::Code::NotHomomorphism, {x, a, b},
               "vertex map is not a homomorphism");
  }
}

std::optional<std::vector<i64>> family_conjugation_defect(const Groupoid& X,
                                                          const BoundingFamily& fam) {
  for (int m = 0; m < X.n_arrows; ++m) {
    int x = X.src[m], y = X.tgt[m];
    for (i64 a = 0; a < fam.A.order; ++a) {
      int moved = X.compose(X.compose(X.inv[m], static_cast<int>(fam.iso[x][a])), m);
      if (moved != fam.iso[y][a]) return std::vector<i64>{m, a};
    }
  }
  return std::nullopt;
}

}  // namespace gclab
