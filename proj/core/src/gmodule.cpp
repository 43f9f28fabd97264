#include "gclab/gmodule.hpp"

#include <algorithm>
#include <unordered_set>

namespace gclab {

GModule validate_gmodule(FiniteGroup G, AbelianGroup A,
                         std::vector<std::vector<i64>> action) {
  if (static_cast<int>(action.size()) != G.order)
    fail(ValidationError::Code::ShapeMismatch, {static_cast<i64>(action.size())},
         "one action table per group element required");
  for (int g = 0; g < G.order; ++g) {
    if (static_cast<i64>(action[g].size()) != A.order)
      fail(ValidationError::Code::ShapeMismatch, {g},
           "action table must cover the coefficient group");
    std::vector<char> hit(A.order, 0);
    for (i64 a = 0; a < A.order; ++a) {
      i64 v = action[g][a];
      if (v < 0 || v >= A.order || hit[v])
        fail(ValidationError::Code::NotAutomorphism, {g, a},
             "action table is not a bijection");
      hit[v] = 1;
    }
    for (i64 a = 0; a < A.order; ++a)
      for (i64 b = 0; b < A.order; ++b)
        if (action[g][A.add(a, b)] != A.add(action[g][a], action[g][b]))
          fail(ValidationError::Code::NotAutomorphism, {g, a, b},
               "action of element is not additive");
  }
  for (i64 a = 0; a < A.order; ++a)
    if (action[G.identity][a] != a)
      fail(ValidationError::Code::NotCompatible, {G.identity, a},
           "identity must act trivially");
  for (int g = 0; g < G.order; ++g)
    for (int h = 0; h < G.order; ++h)
      for (i64 a = 0; a < A.order; ++a)
        if (action[G.op(g, h)][a] != action[g][action[h][a]])
          fail(ValidationError::Code::NotCompatible, {g, h},
               "action[gh] differs from action[g] after action[h]");
  return GModule{std::move(G), std::move(A), std::move(action)};
}

GModule trivial_gmodule(FiniteGroup G, AbelianGroup A) {
  std::vector<i64> id(A.order);
  for (i64 a = 0; a < A.order; ++a) id[a] = a;
  std::vector<std::vector<i64>> action(G.order, id);
  return GModule{std::move(G), std::move(A), std::move(action)};
}

namespace {

std::vector<i64> span_of(const AbelianGroup& A, const std::vector<i64>& gens) {
  std::unordered_set<i64> in = {0};
  std::vector<i64> stack = {0};
  while (!stack.empty()) {
    i64 x = stack.back();
    stack.pop_back();
    for (i64 g : gens) {
      i64 y = A.add(x, g);
      if (in.insert(y).second) stack.push_back(y);
    }
  }
  std::vector<i64> out(in.begin(), in.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SubgroupEmbedding decompose_subgroup(const AbelianGroup& A,
                                     std::vector<i64> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  std::unordered_set<i64> member(elements.begin(), elements.end());
  if (!member.count(0))
    fail(ValidationError::Code::InvalidInput, {}, "subgroup must contain zero");
  for (i64 x : elements)
    for (i64 y : elements)
      if (!member.count(A.add(x, y)))
        fail(ValidationError::Code::InvalidInput, {x, y},
             "element set is not closed under addition");

  // Greedy cyclic decomposition: repeatedly split off an element of maximal
  // order in the current quotient, lifted to a representative of the same
  // ambient-relative order. The final bijection check certifies the result.
  std::vector<i64> gens_desc, factors_desc;
  std::vector<i64> H = {0};
  std::unordered_set<i64> inH = {0};
  while (H.size() < elements.size()) {
    auto quotient_order = [&](i64 x) {
      i64 y = x, k = 1;
      while (!inH.count(y)) {
        y = A.add(y, x);
        ++k;
      }
      return k;
    };
    i64 best_ord = 0;
    for (i64 x : elements) best_ord = std::max(best_ord, quotient_order(x));
    // Take the first element of maximal quotient order, then walk its coset
    // for a lift whose ambient order equals the quotient order; such a lift
    // exists when factors are split off largest first, and it is what makes
    // the sum direct. The bijection check below certifies the outcome.
    i64 pick = -1;
    for (i64 x : elements) {
      if (quotient_order(x) != best_ord) continue;
      pick = x;
      for (i64 h : H) {
        i64 cand = A.add(x, h);
        if (A.order_of(cand) == best_ord) {
          pick = cand;
          break;
        }
      }
      break;
    }
    gens_desc.push_back(pick);
    factors_desc.push_back(best_ord);
    std::vector<i64> all = gens_desc;
    H = span_of(A, all);
    inH = std::unordered_set<i64>(H.begin(), H.end());
  }

  SubgroupEmbedding out;
  std::vector<i64> factors(factors_desc.rbegin(), factors_desc.rend());
  out.generators.assign(gens_desc.rbegin(), gens_desc.rend());
  out.sub = group_from_cyclic_factors(factors);
  if (out.sub.order != static_cast<i64>(elements.size()))
    fail(ValidationError::Code::InvalidInput,
         {out.sub.order, static_cast<i64>(elements.size())},
         "internal: cyclic decomposition order mismatch");
  out.include.resize(out.sub.order);
  std::unordered_set<i64> seen;
  for (i64 t = 0; t < out.sub.order; ++t) {
    std::vector<i64> tu = out.sub.tuple(t);
    i64 v = 0;
    for (size_t i = 0; i < tu.size(); ++i)
      v = A.add(v, A.smul(tu[i], out.generators[i]));
    out.include[t] = v;
    if (!seen.insert(v).second)
      fail(ValidationError::Code::InvalidInput, {t, v},
           "internal: cyclic decomposition is not a direct sum");
  }
  out.elements = std::move(elements);
  return out;
}

SubgroupEmbedding invariants_subgroup(const GModule& M) {
  std::vector<i64> fixed;
  for (i64 a = 0; a < M.A.order; ++a) {
    bool inv = true;
    for (int g = 0; g < M.G.order && inv; ++g) inv = M.act(g, a) == a;
    if (inv) fixed.push_back(a);
  }
  return decompose_subgroup(M.A, std::move(fixed));
}

}  // namespace gclab
