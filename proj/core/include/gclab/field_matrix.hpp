#pragma once

#include <optional>
#include <vector>

#include "gclab/finite_field.hpp"

namespace gclab {

// Dense square matrix over a FiniteField, row major, entries packed.
struct FieldMatrix {
  int n = 0;
  std::vector<i64> entries;

  i64 at(int r, int c) const { return entries[r * n + c]; }
  i64& at(int r, int c) { return entries[r * n + c]; }
  bool operator==(const FieldMatrix& o) const = default;
};

FieldMatrix mat_identity(int n);
FieldMatrix mat_mul(const FiniteField& F, const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix mat_scale(const FiniteField& F, i64 c, const FieldMatrix& m);
FieldMatrix mat_pow(const FiniteField& F, const FieldMatrix& m, i64 e);  // e >= 0
// Gauss-Jordan inverse; absent for singular input.
std::optional<FieldMatrix> mat_inverse(const FiniteField& F, const FieldMatrix& m);
// c such that m = c * identity (c = 0 for the zero matrix), if any.
std::optional<i64> mat_scalar_of(const FieldMatrix& m);

}  // namespace gclab
