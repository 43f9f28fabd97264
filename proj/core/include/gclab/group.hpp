#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gclab/errors.hpp"

namespace gclab {

// A finite group as dense element indices 0..order-1 with a Cayley table.
// Constructors place the identity at index 0; imported tables may put it
// anywhere (validate_group finds it).
struct FiniteGroup {
  int order = 0;
  std::vector<int> cayley;  // order*order, row major: cayley[a*order+b] = a*b
  int identity = 0;
  std::vector<int> inverse;
  std::vector<std::string> labels;  // empty, or one label per element

  int op(int a, int b) const { return cayley[static_cast<size_t>(a) * order + b]; }
  int inv(int a) const { return inverse[a]; }
  bool is_abelian() const;
  bool operator==(const FiniteGroup& o) const {
    return order == o.order && cayley == o.cayley;
  }
};

// Exhaustive axiom check; derives identity and inverses. Witnessed failures:
// NotAssociative(a,b,c), NoIdentity, NoInverse(a).
FiniteGroup validate_group(int order, std::vector<int> cayley,
                           std::vector<std::string> labels = {});

FiniteGroup cyclic_group(i64 n);
FiniteGroup product_group(const FiniteGroup& a, const FiniteGroup& b);
FiniteGroup symmetric_group(int n);  // n <= 5

int element_order(const FiniteGroup& g, int a);
std::vector<int> generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens);
// A small generating set found greedily (largest order first, then index order).
std::vector<int> small_generating_set(const FiniteGroup& g);

struct GroupHom {
  FiniteGroup source, target;
  std::vector<int> map;  // source index -> target index

  int operator()(int x) const { return map[x]; }
};

// Checks map[xy] = map[x]map[y] (identity preservation follows).
// Witnessed failure: NotHomomorphism(x, y).
GroupHom validate_hom(FiniteGroup source, FiniteGroup target, std::vector<int> map);
GroupHom validate_hom(const GroupHom& f);
bool hom_surjective(const GroupHom& f);
bool hom_injective(const GroupHom& f);

// First isomorphism A -> B in lexicographic order over generator images, or
// absent. Deterministic; prunes by order profile and per-element order.
std::optional<std::vector<int>> group_isomorphism(const FiniteGroup& A, const FiniteGroup& B);

// Finite abelian group as a product of cyclic factors. Elements are dense
// indices of residue tuples, mixed radix with the first factor most
// significant: index((a_1,..,a_k)) = ((a_1*m_2)+a_2)*m_3 + ...
struct AbelianGroup {
  std::vector<i64> moduli;
  i64 order = 1;

  i64 size() const { return order; }
  std::vector<i64> tuple(i64 idx) const;
  i64 index_of(const std::vector<i64>& t) const;
  i64 add(i64 a, i64 b) const;
  i64 neg(i64 a) const;
  i64 sub(i64 a, i64 b) const { return add(a, neg(b)); }
  i64 smul(i64 k, i64 a) const;
  i64 zero() const { return 0; }
  i64 order_of(i64 a) const;
  // Multiset of prime-power elementary divisors; equal multisets mean
  // isomorphic groups.
  std::vector<i64> elementary_divisors() const;
  bool isomorphic(const AbelianGroup& o) const;
  FiniteGroup to_group() const;
};

// Validates moduli (all >= 1) and the order cap.
AbelianGroup group_from_cyclic_factors(std::vector<i64> moduli);

}  // namespace gclab
