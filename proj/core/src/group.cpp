#include "gclab/group.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "gclab/caps.hpp"
#include "gclab/smith.hpp"

namespace gclab {

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order; ++a)
    for (int b = a + 1; b < order; ++b)
      if (op(a, b) != op(b, a)) return false;
  return true;
}

FiniteGroup validate_group(int order, std::vector<int> cayley,
                           std::vector<std::string> labels) {
  if (order <= 0)
    fail(ValidationError::Code::InvalidInput, {order}, "group order must be positive");
  if (order > kGroupOrderCap)
    throw CapExceeded("group order " + std::to_string(order) + " exceeds the table cap " +
                      std::to_string(kGroupOrderCap));
  if (static_cast<int>(cayley.size()) != order * order)
    fail(ValidationError::Code::ShapeMismatch, {static_cast<i64>(cayley.size())},
         "cayley table must be order*order");
  for (size_t i = 0; i < cayley.size(); ++i)
    if (cayley[i] < 0 || cayley[i] >= order)
      fail(ValidationError::Code::InvalidInput, {static_cast<i64>(i), cayley[i]},
           "cayley entry out of range");
  if (!labels.empty() && static_cast<int>(labels.size()) != order)
    fail(ValidationError::Code::ShapeMismatch, {static_cast<i64>(labels.size())},
         "labels must be empty or one per element");

  FiniteGroup g;
  g.order = order;
  g.cayley = std::move(cayley);
  g.labels = std::move(labels);

  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      for (int c = 0; c < order; ++c)
        if (g.op(g.op(a, b), c) != g.op(a, g.op(b, c)))
          fail(ValidationError::Code::NotAssociative, {a, b, c},
               "cayley table is not associative");

  int e = -1;
  for (int cand = 0; cand < order; ++cand) {
    bool ok = true;
    for (int a = 0; a < order && ok; ++a)
      ok = g.op(cand, a) == a && g.op(a, cand) == a;
    if (ok) {
      e = cand;
      break;
    }
  }
  if (e < 0) fail(ValidationError::Code::NoIdentity, {}, "no two-sided identity");
  g.identity = e;

  g.inverse.assign(order, -1);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b)
      if (g.op(a, b) == e && g.op(b, a) == e) {
        g.inverse[a] = b;
        break;
      }
    if (g.inverse[a] < 0)
      fail(ValidationError::Code::NoInverse, {a}, "element has no two-sided inverse");
  }
  return g;
}

FiniteGroup cyclic_group(i64 n) {
  if (n < 1)
    fail(ValidationError::Code::InvalidInput, {n}, "cyclic order must be positive");
  if (n > kGroupOrderCap)
    throw CapExceeded("cyclic order " + std::to_string(n) + " exceeds the table cap " +
                      std::to_string(kGroupOrderCap));
  FiniteGroup g;
  g.order = static_cast<int>(n);
  g.cayley.resize(static_cast<size_t>(n) * n);
  g.identity = 0;
  g.inverse.resize(n);
  for (i64 a = 0; a < n; ++a) {
    g.inverse[a] = static_cast<int>((n - a) % n);
    for (i64 b = 0; b < n; ++b)
      g.cayley[static_cast<size_t>(a) * n + b] = static_cast<int>((a + b) % n);
  }
  return g;
}

FiniteGroup product_group(const FiniteGroup& a, const FiniteGroup& b) {
  i64 n = static_cast<i64>(a.order) * b.order;
  if (n > kGroupOrderCap)
    throw CapExceeded("product order " + std::to_string(n) + " exceeds the table cap " +
                      std::to_string(kGroupOrderCap));
  FiniteGroup g;
  g.order = static_cast<int>(n);
  g.cayley.resize(static_cast<size_t>(n) * n);
  g.identity = a.identity * b.order + b.identity;
  g.inverse.resize(n);
  for (int x = 0; x < g.order; ++x) {
    int xa = x / b.order, xb = x % b.order;
    g.inverse[x] = a.inv(xa) * b.order + b.inv(xb);
    for (int y = 0; y < g.order; ++y) {
      int ya = y / b.order, yb = y % b.order;
      g.cayley[static_cast<size_t>(x) * n + y] = a.op(xa, ya) * b.order + b.op(xb, yb);
    }
  }
  return g;
}

FiniteGroup symmetric_group(int n) {
  if (n < 1 || n > 5)
    fail(ValidationError::Code::InvalidInput, {n}, "symmetric_group supports n in 1..5");
  std::vector<std::vector<int>> perms;
  std::vector<int> base(n);
  std::iota(base.begin(), base.end(), 0);
  std::vector<int> p = base;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  // Identity permutation is first in lexicographic order.
  std::map<std::vector<int>, int> idx;
  for (size_t i = 0; i < perms.size(); ++i) idx[perms[i]] = static_cast<int>(i);
  int m = static_cast<int>(perms.size());
  FiniteGroup g;
  g.order = m;
  g.cayley.resize(static_cast<size_t>(m) * m);
  g.identity = 0;
  g.inverse.resize(m);
  for (int x = 0; x < m; ++x) {
    std::vector<int> invp(n);
    for (int i = 0; i < n; ++i) invp[perms[x][i]] = i;
    g.inverse[x] = idx[invp];
    for (int y = 0; y < m; ++y) {
      // (x*y)(i) = x(y(i)); composition as left action on points.
      std::vector<int> c(n);
      for (int i = 0; i < n; ++i) c[i] = perms[x][perms[y][i]];
      g.cayley[static_cast<size_t>(x) * m + y] = idx[c];
    }
  }
  return g;
}

int element_order(const FiniteGroup& g, int a) {
  int x = a, k = 1;
  while (x != g.identity) {
    x = g.op(x, a);
    ++k;
  }
  return k;
}

std::vector<int> generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens) {
  std::vector<char> in(g.order, 0);
  std::vector<int> stack = {g.identity};
  in[g.identity] = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int s : gens) {
      int y = g.op(x, s);
      if (!in[y]) {
        in[y] = 1;
        stack.push_back(y);
      }
    }
  }
  std::vector<int> out;
  for (int i = 0; i < g.order; ++i)
    if (in[i]) out.push_back(i);
  return out;
}

std::vector<int> small_generating_set(const FiniteGroup& g) {
  std::vector<int> gens;
  std::vector<int> span = generated_subgroup(g, gens);
  while (static_cast<int>(span.size()) < g.order) {
    int best = -1, best_gain = -1, best_ord = -1;
    for (int c = 0; c < g.order; ++c) {
      if (std::binary_search(span.begin(), span.end(), c)) continue;
      std::vector<int> trial = gens;
      trial.push_back(c);
      int gain = static_cast<int>(generated_subgroup(g, trial).size());
      int ord = element_order(g, c);
      if (gain > best_gain || (gain == best_gain && ord > best_ord)) {
        best = c;
        best_gain = gain;
        best_ord = ord;
      }
    }
    gens.push_back(best);
    span = generated_subgroup(g, gens);
  }
  return gens;
}

GroupHom validate_hom(FiniteGroup source, FiniteGroup target, std::vector<int> map) {
  if (static_cast<int>(map.size()) != source.order)
    fail(ValidationError::Code::ShapeMismatch, {static_cast<i64>(map.size())},
         "hom map must cover the source group");
  for (int x = 0; x < source.order; ++x)
    if (map[x] < 0 || map[x] >= target.order)
      fail(ValidationError::Code::InvalidInput, {x, map[x]}, "hom image out of range");
  for (int x = 0; x < source.order; ++x)
    for (int y = 0; y < source.order; ++y)
      if (map[source.op(x, y)] != target.op(map[x], map[y]))
        fail(ValidationError::Code::NotHomomorphism, {x, y}, "map is not multiplicative");
  return GroupHom{std::move(source), std::move(target), std::move(map)};
}

GroupHom validate_hom(const GroupHom& f) { return validate_hom(f.source, f.target, f.map); }

std::optional<std::vector<int>> group_isomorphism(const FiniteGroup& A, const FiniteGroup& B) {
  if (A.order != B.order) return std::nullopt;
  std::vector<int> ord_a(A.order), ord_b(B.order);
  for (int x = 0; x < A.order; ++x) ord_a[x] = element_order(A, x);
  for (int x = 0; x < B.order; ++x) ord_b[x] = element_order(B, x);
  {
    std::vector<int> sa = ord_a, sb = ord_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  std::vector<int> gens = small_generating_set(A);
  i64 budget = 1;
  for (size_t i = 0; i < gens.size() && budget <= kHardEnumerationCap; ++i) budget *= B.order;
  check_enumeration_budget(budget, "group isomorphism search");

  // Express every element by one generator step from an earlier element.
  std::vector<std::pair<int, int>> expr(A.order, {-1, -1});
  std::vector<int> bfs = {A.identity};
  std::vector<char> seen(A.order, 0);
  seen[A.identity] = 1;
  for (size_t qi = 0; qi < bfs.size(); ++qi)
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      int y = A.op(bfs[qi], gens[gi]);
      if (!seen[y]) {
        seen[y] = 1;
        expr[y] = {bfs[qi], static_cast<int>(gi)};
        bfs.push_back(y);
      }
    }

  std::vector<int> img(gens.size(), -1);
  std::function<std::optional<std::vector<int>>(size_t)> rec =
      [&](size_t k) -> std::optional<std::vector<int>> {
    if (k == gens.size()) {
      std::vector<int> map(A.order, -1);
      map[A.identity] = B.identity;
      for (size_t qi = 1; qi < bfs.size(); ++qi) {
        int y = bfs[qi];
        map[y] = B.op(map[expr[y].first], img[expr[y].second]);
      }
      std::vector<char> hit(B.order, 0);
      for (int v : map) {
        if (v < 0 || hit[v]) return std::nullopt;
        hit[v] = 1;
      }
      for (int x = 0; x < A.order; ++x)
        for (int y = 0; y < A.order; ++y)
          if (map[A.op(x, y)] != B.op(map[x], map[y])) return std::nullopt;
      return map;
    }
    for (int c = 0; c < B.order; ++c) {
      if (ord_b[c] != ord_a[gens[k]]) continue;
      img[k] = c;
      if (auto r = rec(k + 1)) return r;
    }
    img[k] = -1;
    return std::nullopt;
  };
  return rec(0);
}

bool hom_surjective(const GroupHom& f) {
  std::vector<char> hit(f.target.order, 0);
  for (int v : f.map) hit[v] = 1;
  for (char h : hit)
    if (!h) return false;
  return true;
}

bool hom_injective(const GroupHom& f) {
  std::vector<char> hit(f.target.order, 0);
  for (int v : f.map) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

std::vector<i64> AbelianGroup::tuple(i64 idx) const {
  std::vector<i64> t(moduli.size());
  for (size_t i = moduli.size(); i-- > 0;) {
    t[i] = idx % moduli[i];
    idx /= moduli[i];
  }
  return t;
}

i64 AbelianGroup::index_of(const std::vector<i64>& t) const {
  if (t.size() != moduli.size())
    fail(ValidationError::Code::ShapeMismatch, {static_cast<i64>(t.size())},
         "tuple length mismatch");
  i64 idx = 0;
  for (size_t i = 0; i < moduli.size(); ++i) {
    i64 r = ((t[i] % moduli[i]) + moduli[i]) % moduli[i];
    idx = idx * moduli[i] + r;
  }
  return idx;
}

i64 AbelianGroup::add(i64 a, i64 b) const {
  i64 idx = 0;
  // Componentwise sum, computed without materializing tuples.
  // Walk coordinates most-significant first.
  i64 da = order, db = order;
  for (size_t i = 0; i < moduli.size(); ++i) {
    da /= moduli[i];
    db /= moduli[i];
    i64 ca = (a / da) % moduli[i];
    i64 cb = (b / db) % moduli[i];
    idx = idx * moduli[i] + (ca + cb) % moduli[i];
  }
  return idx;
}

i64 AbelianGroup::neg(i64 a) const {
  i64 idx = 0, d = order;
  for (size_t i = 0; i < moduli.size(); ++i) {
    d /= moduli[i];
    i64 c = (a / d) % moduli[i];
    idx = idx * moduli[i] + (moduli[i] - c) % moduli[i];
  }
  return idx;
}

i64 AbelianGroup::smul(i64 k, i64 a) const {
  i64 idx = 0, d = order;
  for (size_t i = 0; i < moduli.size(); ++i) {
    d /= moduli[i];
    i64 c = (a / d) % moduli[i];
    i64 r = (k % moduli[i]) * c % moduli[i];
    idx = idx * moduli[i] + ((r % moduli[i]) + moduli[i]) % moduli[i];
  }
  return idx;
}

i64 AbelianGroup::order_of(i64 a) const {
  i64 x = a, k = 1;
  while (x != 0) {
    x = add(x, a);
    ++k;
  }
  return k;
}

std::vector<i64> AbelianGroup::elementary_divisors() const {
  std::vector<i64> out;
  for (i64 m : moduli) {
    for (i64 p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      i64 q = 1;
      while (m % p == 0) {
        q *= p;
        m /= p;
      }
      out.push_back(q);
    }
    if (m > 1) out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool AbelianGroup::isomorphic(const AbelianGroup& o) const {
  return elementary_divisors() == o.elementary_divisors();
}

FiniteGroup AbelianGroup::to_group() const {
  if (order > kGroupOrderCap)
    throw CapExceeded("abelian group order " + std::to_string(order) +
                      " exceeds the table cap " + std::to_string(kGroupOrderCap));
  FiniteGroup g;
  g.order = static_cast<int>(order);
  g.cayley.resize(static_cast<size_t>(order) * order);
  g.identity = 0;
  g.inverse.resize(order);
  for (i64 a = 0; a < order; ++a) {
    g.inverse[a] = static_cast<int>(neg(a));
    for (i64 b = 0; b < order; ++b)
      g.cayley[static_cast<size_t>(a) * order + b] = static_cast<int>(add(a, b));
  }
  return g;
}

AbelianGroup group_from_cyclic_factors(std::vector<i64> moduli) {
  AbelianGroup a;
  for (i64 m : moduli) {
    if (m < 1)
      fail(ValidationError::Code::InvalidInput, {m}, "cyclic factor must be positive");
    a.order = checked_mul(a.order, m);
  }
  if (a.order > kGroupOrderCap)
    throw CapExceeded("abelian group order " + std::to_string(a.order) +
                      " exceeds the table cap " + std::to_string(kGroupOrderCap));
  a.moduli = std::move(moduli);
  return a;
}

}  // namespace gclab
