#pragma once

#include <optional>
#include <vector>

#include "gclab/errors.hpp"

namespace gclab {

// Dense integer matrix, row major. All arithmetic is overflow checked; the
// desk-scale inputs this library accepts stay far below the i64 range, so an
// overflow here means a logic error and throws.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<i64> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

  i64& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  i64 at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static Mat identity(int n);
  bool operator==(const Mat&) const = default;
};

Mat mat_mul(const Mat& x, const Mat& y);
std::vector<i64> mat_apply(const Mat& m, const std::vector<i64>& v);

// Smith normal form with unimodular transforms and their inverses:
//   U * A * V = D,  Ui = U^-1,  Vi = V^-1,
// D diagonal (rectangular), nonnegative, D[0][0] | D[1][1] | ...
struct Smith {
  Mat U, Ui, D, V, Vi;
  int rank = 0;
  i64 d(int i) const { return D.at(i, i); }
};

Smith smith_normal_form(Mat A);

// Basis (as matrix columns) of the integer kernel lattice of A.
Mat kernel_basis(const Mat& A);

// Basis of the lattice spanned by the columns of `gens` (columns of the
// result; count = rank).
Mat column_lattice_basis(const Mat& gens);

// Reusable exact solver for A x = b over the integers. Returns one solution
// (free coordinates zero) or nullopt when none exists.
class IntSolver {
 public:
  explicit IntSolver(Mat A);
  std::optional<std::vector<i64>> solve(const std::vector<i64>& b) const;
  const Smith& smith() const { return s_; }

 private:
  Smith s_;
  int rows_, cols_;
};

i64 checked_mul(i64 x, i64 y);
i64 checked_add(i64 x, i64 y);

}  // namespace gclab
