#include "gclab/cochain.hpp"

#include "gclab/caps.hpp"
#include "gclab/smith.hpp"

namespace gclab {

i64 cochain_positions(const GModule& M, int degree) {
  i64 n = 1;
  for (int i = 0; i < degree; ++i) n = checked_mul(n, M.G.order);
  return n;
}

Cochain zero_cochain(const GModule& M, int degree) {
  return Cochain{degree, std::vector<i64>(cochain_positions(M, degree), 0)};
}

void check_cochain_shape(const GModule& M, const Cochain& c) {
  if (c.degree < 0 || c.degree > 3)
    fail(ValidationError::Code::InvalidInput, {c.degree}, "cochain degree must be 0..3");
  if (static_cast<i64>(c.values.size()) != cochain_positions(M, c.degree))
    fail(ValidationError::Code::ModuleMismatch,
         {c.degree, static_cast<i64>(c.values.size())},
         "cochain table size does not match |G|^degree");
  for (i64 v : c.values)
    if (v < 0 || v >= M.A.order)
      fail(ValidationError::Code::ModuleMismatch, {v}, "cochain value out of range");
}

Cochain cochain_add(const GModule& M, const Cochain& a, const Cochain& b) {
  if (a.degree != b.degree || a.values.size() != b.values.size())
    fail(ValidationError::Code::ModuleMismatch, {a.degree, b.degree},
         "cochain degree mismatch");
  Cochain r = a;
  for (size_t i = 0; i < r.values.size(); ++i)
    r.values[i] = M.A.add(a.values[i], b.values[i]);
  return r;
}

Cochain cochain_sub(const GModule& M, const Cochain& a, const Cochain& b) {
  if (a.degree != b.degree || a.values.size() != b.values.size())
    fail(ValidationError::Code::ModuleMismatch, {a.degree, b.degree},
         "cochain degree mismatch");
  Cochain r = a;
  for (size_t i = 0; i < r.values.size(); ++i)
    r.values[i] = M.A.sub(a.values[i], b.values[i]);
  return r;
}

bool cochain_is_zero(const Cochain& c) {
  for (i64 v : c.values)
    if (v != 0) return false;
  return true;
}

Cochain differential(const GModule& M, const Cochain& c) {
  check_cochain_shape(M, c);
  if (c.degree > 2)
    fail(ValidationError::Code::InvalidInput, {c.degree},
         "differential supports degrees 0..2");
  const int n = c.degree;
  const int q = M.G.order;
  Cochain out = zero_cochain(M, n + 1);

  std::vector<int> g(n + 1, 0);
  i64 pos = 0;
  while (true) {
    // Face maps on the tuple (g_0,...,g_n).
    i64 v;
    {
      // Leading term: g_0 . c(g_1,...,g_n).
      i64 sub = 0;
      for (int i = 1; i <= n; ++i) sub = sub * q + g[i];
      v = M.act(g[0], c.values[sub]);
    }
    int sign = -1;
    for (int i = 1; i <= n; ++i) {
      // Merge g_{i-1} g_i.
      i64 sub = 0;
      for (int j = 0; j <= n; ++j) {
        if (j == i - 1) {
          sub = sub * q + M.G.op(g[i - 1], g[i]);
          ++j;  // skip g_i, already merged
        } else {
          sub = sub * q + g[j];
        }
      }
      i64 term = c.values[sub];
      v = sign > 0 ? M.A.add(v, term) : M.A.sub(v, term);
      sign = -sign;
    }
    {
      // Trailing term: (-1)^{n+1} c(g_0,...,g_{n-1}).
      i64 sub = 0;
      for (int i = 0; i < n; ++i) sub = sub * q + g[i];
      i64 term = c.values[sub];
      v = sign > 0 ? M.A.add(v, term) : M.A.sub(v, term);
    }
    out.values[pos] = v;

    ++pos;
    int i = n;
    while (i >= 0 && ++g[i] == q) {
      g[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

bool is_cocycle(const GModule& M, const Cochain& c, std::vector<i64>* witness) {
  check_cochain_shape(M, c);
  if (c.degree != 1 && c.degree != 2)
    fail(ValidationError::Code::InvalidInput, {c.degree},
         "cocycle test supports degrees 1 and 2");
  Cochain d = differential(M, c);
  const int q = M.G.order;
  for (i64 pos = 0; pos < static_cast<i64>(d.values.size()); ++pos) {
    if (d.values[pos] == 0) continue;
    if (witness) {
      witness->clear();
      i64 rem = pos;
      for (int i = 0; i <= c.degree; ++i) witness->push_back(0);
      for (int i = c.degree; i >= 0; --i) {
        (*witness)[i] = rem % q;
        rem /= q;
      }
    }
    return false;
  }
  return true;
}

Cochain normalize(const GModule& M, const Cochain& h) {
  check_cochain_shape(M, h);
  if (h.degree != 2)
    fail(ValidationError::Code::InvalidInput, {h.degree}, "normalize expects degree 2");
  const int q = M.G.order;
  const int e = M.G.identity;
  i64 c = h.values[static_cast<i64>(e) * q + e];
  Cochain g{1, std::vector<i64>(q, c)};
  return cochain_sub(M, h, differential(M, g));
}

Cochain random_cochain(const GModule& M, int degree, std::mt19937& rng) {
  Cochain c = zero_cochain(M, degree);
  std::uniform_int_distribution<i64> dist(0, M.A.order - 1);
  for (auto& v : c.values) v = dist(rng);
  return c;
}

i64 cochain_value1(const GModule& M, const Cochain& g, int s) {
  (void)M;
  return g.values[s];
}

i64 cochain_value2(const GModule& M, const Cochain& h, int s, int t) {
  return h.values[static_cast<i64>(s) * M.G.order + t];
}

}  // namespace gclab
