#include "gclab/extension.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "gclab/caps.hpp"

namespace gclab {

namespace {

// total-group index -> kernel coefficient index, or -1 outside the kernel.
std::vector<i64> kernel_lookup(const GroupExtension& E) {
  std::vector<i64> kmap(E.total.order, -1);
  for (i64 a = 0; a < E.induced_action.A.order; ++a) kmap[E.kernel_embedding.map[a]] = a;
  return kmap;
}

i64 saturating_pow(i64 base, i64 exp) {
  i64 r = 1;
  for (i64 i = 0; i < exp && r <= kHardEnumerationCap; ++i) r *= base;
  return r;
}

}  // namespace

void validate_extension(const GroupExtension& E) {
  const GModule& M = E.induced_action;
  validate_gmodule(M.G, M.A, M.action);
  if (E.total.order != M.A.order * M.G.order)
    fail(ValidationError::Code::ShapeMismatch, {E.total.order, M.A.order, M.G.order},
         "total order must be |A| * |H|");
  if (static_cast<i64>(E.kernel_embedding.map.size()) != M.A.order ||
      !(E.kernel_embedding.target == E.total))
    fail(ValidationError::Code::ModuleMismatch, {}, "kernel embedding shape mismatch");
  if (!(E.projection.source == E.total) || !(E.projection.target == M.G))
    fail(ValidationError::Code::ModuleMismatch, {}, "projection shape mismatch");
  validate_hom(E.kernel_embedding);
  validate_hom(E.projection);
  if (!hom_injective(E.kernel_embedding))
    fail(ValidationError::Code::InvalidInput, {}, "kernel embedding is not injective");
  if (!hom_surjective(E.projection))
    fail(ValidationError::Code::NotSurjective, {}, "projection is not surjective");

  std::vector<i64> kmap = kernel_lookup(E);
  for (i64 a = 0; a < M.A.order; ++a)
    if (E.projection.map[E.kernel_embedding.map[a]] != M.G.identity)
      fail(ValidationError::Code::InvalidInput, {a},
           "kernel embedding does not land in the projection kernel");
  i64 ker_size = 0;
  for (int x = 0; x < E.total.order; ++x)
    if (E.projection.map[x] == M.G.identity) ++ker_size;
  if (ker_size != M.A.order)
    fail(ValidationError::Code::InvalidInput, {ker_size, M.A.order},
         "projection kernel is larger than the embedded coefficients");

  for (int x = 0; x < E.total.order; ++x)
    for (i64 a = 0; a < M.A.order; ++a) {
      int c = E.total.op(E.total.op(x, static_cast<int>(E.kernel_embedding.map[a])),
                         E.total.inv(x));
      if (kmap[c] < 0)
        fail(ValidationError::Code::InvalidInput, {x, a}, "kernel image is not normal");
    }

  Section s = canonical_section(E);
  for (int g = 0; g < M.G.order; ++g)
    for (i64 a = 0; a < M.A.order; ++a) {
      int conj = E.total.op(
          E.total.op(static_cast<int>(s.images[g]),
                     static_cast<int>(E.kernel_embedding.map[a])),
          E.total.inv(static_cast<int>(s.images[g])));
      if (E.kernel_embedding.map[M.act(g, a)] != conj)
        fail(ValidationError::Code::NotCompatible, {g, a},
             "induced action disagrees with conjugation through a section");
    }
}

GroupExtension extension_from_cocycle(const GModule& M, const Cochain& h) {
  check_cochain_shape(M, h);
  if (h.degree != 2)
    fail(ValidationError::Code::InvalidInput, {h.degree},
         "extension_from_cocycle expects a degree-2 table");
  const i64 nA = M.A.order;
  const int nH = M.G.order;
  const i64 n = nA * nH;
  if (n > kGroupOrderCap)
    throw CapExceeded("extension order " + std::to_string(n) + " exceeds the group cap " +
                      std::to_string(kGroupOrderCap));

  std::vector<int> cayley(n * n);
  for (i64 a = 0; a < nA; ++a)
    for (int s = 0; s < nH; ++s)
      for (i64 b = 0; b < nA; ++b)
        for (int t = 0; t < nH; ++t) {
          i64 val = M.A.add(M.A.add(a, M.act(s, b)), cochain_value2(M, h, s, t));
          cayley[(a * nH + s) * n + (b * nH + t)] = static_cast<int>(val * nH + M.G.op(s, t));
        }

  // Associativity of the raw table, scanned in index order. A failing triple
  // witnesses the 2-cocycle identity at the projected group elements.
  for (i64 x = 0; x < n; ++x)
    for (i64 y = 0; y < n; ++y)
      for (i64 z = 0; z < n; ++z) {
        int xy_z = cayley[cayley[x * n + y] * n + z];
        int x_yz = cayley[x * n + cayley[y * n + z]];
        if (xy_z != x_yz)
          negative(NegativeResult::Kind::NotACocycle,
                   {static_cast<i64>(x % nH), static_cast<i64>(y % nH),
                    static_cast<i64>(z % nH)},
                   "table fails the 2-cocycle identity");
      }

  std::vector<std::string> labels;
  labels.reserve(n);
  for (i64 a = 0; a < nA; ++a)
    for (int s = 0; s < nH; ++s) {
      std::string hs = M.G.labels.empty() ? std::to_string(s) : M.G.labels[s];
      labels.push_back("(" + std::to_string(a) + "|" + hs + ")");
    }

  GroupExtension E;
  E.total = validate_group(static_cast<int>(n), cayley, labels);
  i64 c = cochain_value2(M, h, M.G.identity, M.G.identity);
  E.kernel_embedding.source = M.A.to_group();
  E.kernel_embedding.target = E.total;
  E.kernel_embedding.map.resize(nA);
  for (i64 a = 0; a < nA; ++a)
    E.kernel_embedding.map[a] = M.A.sub(a, c) * nH + M.G.identity;
  E.projection.source = E.total;
  E.projection.target = M.G;
  E.projection.map.resize(n);
  for (i64 x = 0; x < n; ++x) E.projection.map[x] = x % nH;
  E.induced_action = M;
  validate_extension(E);
  return E;
}

Section canonical_section(const GroupExtension& E) {
  Section s;
  s.images.assign(E.induced_action.G.order, -1);
  for (int x = 0; x < E.total.order; ++x) {
    i64& slot = s.images[E.projection.map[x]];
    if (slot < 0) slot = x;
  }
  s.homomorphic = true;
  const FiniteGroup& H = E.induced_action.G;
  for (int a = 0; a < H.order && s.homomorphic; ++a)
    for (int b = 0; b < H.order; ++b)
      if (E.total.op(static_cast<int>(s.images[a]), static_cast<int>(s.images[b])) !=
          s.images[H.op(a, b)]) {
        s.homomorphic = false;
        break;
      }
  return s;
}

Section section_from_images(const GroupExtension& E, const std::vector<i64>& images) {
  const FiniteGroup& H = E.induced_action.G;
  if (static_cast<int>(images.size()) != H.order)
    fail(ValidationError::Code::NotASection, {static_cast<i64>(images.size())},
         "section must assign one element per quotient element");
  for (int g = 0; g < H.order; ++g) {
    if (images[g] < 0 || images[g] >= E.total.order)
      fail(ValidationError::Code::NotASection, {g}, "section image out of range");
    if (E.projection.map[images[g]] != g)
      fail(ValidationError::Code::NotASection, {g},
           "projection does not return the section to the identity");
  }
  Section s;
  s.images = images;
  s.homomorphic = true;
  for (int a = 0; a < H.order && s.homomorphic; ++a)
    for (int b = 0; b < H.order; ++b)
      if (E.total.op(static_cast<int>(images[a]), static_cast<int>(images[b])) !=
          images[H.op(a, b)]) {
        s.homomorphic = false;
        break;
      }
  return s;
}

Cochain cocycle_from_extension(const GroupExtension& E, const Section& j) {
  validate_extension(E);
  const GModule& M = E.induced_action;
  Section checked = section_from_images(E, j.images);
  std::vector<i64> kmap = kernel_lookup(E);
  Cochain h = zero_cochain(M, 2);
  for (int s = 0; s < M.G.order; ++s)
    for (int t = 0; t < M.G.order; ++t) {
      int prod = E.total.op(
          E.total.op(static_cast<int>(checked.images[s]), static_cast<int>(checked.images[t])),
          E.total.inv(static_cast<int>(checked.images[M.G.op(s, t)])));
      i64 a = kmap[prod];
      if (a < 0)
        fail(ValidationError::Code::InvalidInput, {s, t},
             "internal: section defect escaped the kernel");
      h.values[static_cast<i64>(s) * M.G.order + t] = a;
    }
  return h;
}

std::optional<std::vector<i64>> extensions_isomorphic(const GroupExtension& E1,
                                                      const GroupExtension& E2) {
  validate_extension(E1);
  validate_extension(E2);
  if (!E1.induced_action.same_shape(E2.induced_action))
    fail(ValidationError::Code::ShapeMismatch, {},
         "extensions must share the kernel module and quotient");
  const GModule& M = E1.induced_action;
  const int nH = M.G.order;
  const i64 nA = M.A.order;

  std::vector<i64> kmap1 = kernel_lookup(E1);
  Section s1 = canonical_section(E1);
  std::vector<std::vector<int>> fibre2(nH);
  for (int y = 0; y < E2.total.order; ++y) fibre2[E2.projection.map[y]].push_back(y);

  // phi restricted to A must be the identity, which pins the image of s1(e).
  i64 a0 = kmap1[s1.images[M.G.identity]];
  if (a0 < 0)
    fail(ValidationError::Code::InvalidInput, {}, "internal: section at identity not in kernel");
  int te = static_cast<int>(E2.kernel_embedding.map[a0]);

  std::vector<int> free_sigma;
  for (int s = 0; s < nH; ++s)
    if (s != M.G.identity) free_sigma.push_back(s);
  check_enumeration_budget(saturating_pow(nA, static_cast<i64>(free_sigma.size())),
                           "extension isomorphism search");

  std::vector<i64> pick(free_sigma.size(), 0);
  while (true) {
    std::vector<int> t(nH);
    t[M.G.identity] = te;
    for (size_t i = 0; i < free_sigma.size(); ++i)
      t[free_sigma[i]] = fibre2[free_sigma[i]][pick[i]];

    std::vector<i64> phi(E1.total.order);
    for (int x = 0; x < E1.total.order; ++x) {
      int sigma = E1.projection.map[x];
      i64 a = kmap1[E1.total.op(x, E1.total.inv(static_cast<int>(s1.images[sigma])))];
      phi[x] = E2.total.op(static_cast<int>(E2.kernel_embedding.map[a]), t[sigma]);
    }
    bool ok = true;
    std::set<i64> image(phi.begin(), phi.end());
    if (static_cast<int>(image.size()) != E1.total.order) ok = false;
    for (int x = 0; x < E1.total.order && ok; ++x)
      for (int y = 0; y < E1.total.order; ++y)
        if (phi[E1.total.op(x, y)] !=
            E2.total.op(static_cast<int>(phi[x]), static_cast<int>(phi[y]))) {
          ok = false;
          break;
        }
    if (ok) return phi;

    size_t i = free_sigma.size();
    bool done = true;
    while (i-- > 0) {
      if (++pick[i] < nA) {
        done = false;
        break;
      }
      pick[i] = 0;
    }
    if (done || free_sigma.empty()) break;
  }
  return std::nullopt;
}

SectionOrbitSet sections_mod_conjugation(const GroupExtension& E) {
  validate_extension(E);
  const GModule& M = E.induced_action;
  const int nH = M.G.order;
  const i64 nA = M.A.order;

  std::vector<std::vector<int>> fibre(nH);
  for (int x = 0; x < E.total.order; ++x) fibre[E.projection.map[x]].push_back(x);

  std::vector<int> free_sigma;
  for (int s = 0; s < nH; ++s)
    if (s != M.G.identity) free_sigma.push_back(s);
  check_enumeration_budget(saturating_pow(nA, static_cast<i64>(free_sigma.size())),
                           "section enumeration");

  SectionOrbitSet out;
  std::map<std::vector<i64>, int> index_of;
  std::vector<i64> pick(free_sigma.size(), 0);
  while (true) {
    std::vector<i64> images(nH);
    images[M.G.identity] = E.total.identity;
    for (size_t i = 0; i < free_sigma.size(); ++i)
      images[free_sigma[i]] = fibre[free_sigma[i]][pick[i]];
    bool hom = true;
    for (int a = 0; a < nH && hom; ++a)
      for (int b = 0; b < nH; ++b)
        if (E.total.op(static_cast<int>(images[a]), static_cast<int>(images[b])) !=
            images[M.G.op(a, b)]) {
          hom = false;
          break;
        }
    if (hom) {
      index_of[images] = static_cast<int>(out.sections.size());
      out.sections.push_back(Section{images, true});
    }
    size_t i = free_sigma.size();
    bool done = true;
    while (i-- > 0) {
      if (++pick[i] < nA) {
        done = false;
        break;
      }
      pick[i] = 0;
    }
    if (done || free_sigma.empty()) break;
  }
  if (out.sections.empty())
    negative(NegativeResult::Kind::NotSplit, {}, "extension admits no homomorphic section");

  // Orbits under conjugation by kernel elements.
  std::vector<int> parent(out.sections.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t si = 0; si < out.sections.size(); ++si)
    for (i64 a = 0; a < nA; ++a) {
      int k = static_cast<int>(E.kernel_embedding.map[a]);
      std::vector<i64> conj(nH);
      for (int s = 0; s < nH; ++s)
        conj[s] = E.total.op(E.total.op(k, static_cast<int>(out.sections[si].images[s])),
                             E.total.inv(k));
      auto it = index_of.find(conj);
      if (it == index_of.end())
        fail(ValidationError::Code::InvalidInput, {static_cast<i64>(si), a},
             "internal: conjugate section missing from the enumeration");
      int ra = find(static_cast<int>(si)), rb = find(it->second);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
  std::map<int, int> orbit_id;
  out.orbit_of.resize(out.sections.size());
  for (size_t si = 0; si < out.sections.size(); ++si) {
    int r = find(static_cast<int>(si));
    auto it = orbit_id.find(r);
    if (it == orbit_id.end()) it = orbit_id.emplace(r, static_cast<int>(orbit_id.size())).first;
    out.orbit_of[si] = it->second;
  }
  out.orbit_count = static_cast<int>(orbit_id.size());

  // Simply-transitive action of the degree-1 cohomology on orbits:
  // (g . j)(sigma) = j(sigma) * i(g(sigma))^-1.
  out.h1 = cohomology_group(M, 1);
  i64 classes = out.h1.order();
  out.action.assign(out.orbit_count, std::vector<int>(classes, -1));
  std::vector<i64> coords(out.h1.invariant_factors.size(), 0);
  for (i64 rank = 0; rank < classes; ++rank) {
    Cochain g = out.h1.representative(coords);
    for (size_t si = 0; si < out.sections.size(); ++si) {
      std::vector<i64> twisted(nH);
      for (int s = 0; s < nH; ++s) {
        int k = static_cast<int>(E.kernel_embedding.map[g.values[s]]);
        twisted[s] = E.total.op(static_cast<int>(out.sections[si].images[s]), E.total.inv(k));
      }
      auto it = index_of.find(twisted);
      if (it == index_of.end())
        fail(ValidationError::Code::InvalidInput, {static_cast<i64>(si), rank},
             "internal: twisted section is not homomorphic");
      int o = out.orbit_of[si];
      int o2 = out.orbit_of[it->second];
      if (out.action[o][rank] >= 0 && out.action[o][rank] != o2)
        fail(ValidationError::Code::InvalidInput, {static_cast<i64>(o), rank},
             "internal: twist action is not well defined on orbits");
      out.action[o][rank] = o2;
    }
    size_t i = coords.size();
    bool done = true;
    while (i-- > 0) {
      if (++coords[i] < out.h1.invariant_factors[i]) {
        done = false;
        break;
      }
      coords[i] = 0;
    }
    if (done && rank + 1 < classes)
      fail(ValidationError::Code::InvalidInput, {rank}, "internal: class enumeration short");
  }
  for (int o1 = 0; o1 < out.orbit_count; ++o1)
    for (int o2 = 0; o2 < out.orbit_count; ++o2) {
      i64 hits = 0;
      for (i64 rank = 0; rank < classes; ++rank)
        if (out.action[o1][rank] == o2) ++hits;
      if (hits != 1)
        fail(ValidationError::Code::InvalidInput, {o1, o2, hits},
             "internal: twist action is not simply transitive");
    }
  return out;
}

}  // namespace gclab
