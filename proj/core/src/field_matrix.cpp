#include "gclab/field_matrix.hpp"

namespace gclab {

FieldMatrix mat_identity(int n) {
  FieldMatrix m;
  m.n = n;
  m.entries.assign(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FieldMatrix mat_mul(const FiniteField& F, const FieldMatrix& a, const FieldMatrix& b) {
  if (a.n != b.n)
    fail(ValidationError::Code::ShapeMismatch, {a.n, b.n}, "matrix sizes differ");
  int n = a.n;
  FieldMatrix out;
  out.n = n;
  out.entries.assign(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      i64 x = a.at(i, l);
      if (x == 0) continue;
      for (int j = 0; j < n; ++j)
        out.at(i, j) = F.add(out.at(i, j), F.mul(x, b.at(l, j)));
    }
  return out;
}

FieldMatrix mat_scale(const FiniteField& F, i64 c, const FieldMatrix& m) {
  FieldMatrix out = m;
  for (i64& e : out.entries) e = F.mul(c, e);
  return out;
}

FieldMatrix mat_pow(const FiniteField& F, const FieldMatrix& m, i64 e) {
  if (e < 0) fail(ValidationError::Code::InvalidInput, {e}, "matrix power must be nonnegative");
  FieldMatrix acc = mat_identity(m.n), base = m;
  while (e > 0) {
    if (e & 1) acc = mat_mul(F, acc, base);
    base = mat_mul(F, base, base);
    e >>= 1;
  }
  return acc;
}

std::optional<FieldMatrix> mat_inverse(const FiniteField& F, const FieldMatrix& m) {
  int n = m.n;
  FieldMatrix a = m, inv = mat_identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (a.at(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return std::nullopt;
    for (int j = 0; j < n; ++j) {
      std::swap(a.at(col, j), a.at(pivot, j));
      std::swap(inv.at(col, j), inv.at(pivot, j));
    }
    i64 scale = F.inv(a.at(col, col));
    for (int j = 0; j < n; ++j) {
      a.at(col, j) = F.mul(scale, a.at(col, j));
      inv.at(col, j) = F.mul(scale, inv.at(col, j));
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      i64 factor = a.at(r, col);
      if (factor == 0) continue;
      for (int j = 0; j < n; ++j) {
        a.at(r, j) = F.sub(a.at(r, j), F.mul(factor, a.at(col, j)));
        inv.at(r, j) = F.sub(inv.at(r, j), F.mul(factor, inv.at(col, j)));
      }
    }
  }
  return inv;
}

std::optional<i64> mat_scalar_of(const FieldMatrix& m) {
  i64 c = m.n > 0 ? m.at(0, 0) : 0;
  for (int r = 0; r < m.n; ++r)
    for (int col = 0; col < m.n; ++col)
      if (m.at(r, col) != (r == col ? c : 0)) return std::nullopt;
  return c;
}

}  // namespace gclab
