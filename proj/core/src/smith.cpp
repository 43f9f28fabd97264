#include "gclab/smith.hpp"

#include <cstdlib>
#include <stdexcept>

namespace gclab {

i64 checked_mul(i64 x, i64 y) {
  i64 r;
  if (__builtin_mul_overflow(x, y, &r))
    throw std::overflow_error("integer overflow in exact arithmetic");
  return r;
}

i64 checked_add(i64 x, i64 y) {
  i64 r;
  if (__builtin_add_overflow(x, y, &r))
    throw std::overflow_error("integer overflow in exact arithmetic");
  return r;
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat mat_mul(const Mat& x, const Mat& y) {
  if (x.cols != y.rows) fail(ValidationError::Code::ShapeMismatch, {x.cols, y.rows}, "matrix product shape");
  Mat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      i64 v = x.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j)
        r.at(i, j) = checked_add(r.at(i, j), checked_mul(v, y.at(k, j)));
    }
  return r;
}

std::vector<i64> mat_apply(const Mat& m, const std::vector<i64>& v) {
  if (static_cast<int>(v.size()) != m.cols)
    fail(ValidationError::Code::ShapeMismatch, {m.cols, static_cast<i64>(v.size())}, "matrix apply shape");
  std::vector<i64> r(m.rows, 0);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (m.at(i, j) != 0) r[i] = checked_add(r[i], checked_mul(m.at(i, j), v[j]));
  return r;
}

namespace {

// Elementary operations applied simultaneously to A, the transforms, and
// their inverses, keeping U*A0*V = A and U*Ui = I, V*Vi = I at all times.
struct Work {
  Mat A, U, Ui, V, Vi;

  void row_swap(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < A.cols; ++c) std::swap(A.at(i, c), A.at(j, c));
    for (int c = 0; c < U.cols; ++c) std::swap(U.at(i, c), U.at(j, c));
    for (int r = 0; r < Ui.rows; ++r) std::swap(Ui.at(r, i), Ui.at(r, j));
  }
  void row_negate(int i) {
    for (int c = 0; c < A.cols; ++c) A.at(i, c) = -A.at(i, c);
    for (int c = 0; c < U.cols; ++c) U.at(i, c) = -U.at(i, c);
    for (int r = 0; r < Ui.rows; ++r) Ui.at(r, i) = -Ui.at(r, i);
  }
  // row_i += k * row_j
  void row_addmul(int i, int j, i64 k) {
    if (k == 0) return;
    for (int c = 0; c < A.cols; ++c)
      A.at(i, c) = checked_add(A.at(i, c), checked_mul(k, A.at(j, c)));
    for (int c = 0; c < U.cols; ++c)
      U.at(i, c) = checked_add(U.at(i, c), checked_mul(k, U.at(j, c)));
    for (int r = 0; r < Ui.rows; ++r)
      Ui.at(r, j) = checked_add(Ui.at(r, j), checked_mul(-k, Ui.at(r, i)));
  }
  void col_swap(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < A.rows; ++r) std::swap(A.at(r, i), A.at(r, j));
    for (int r = 0; r < V.rows; ++r) std::swap(V.at(r, i), V.at(r, j));
    for (int c = 0; c < Vi.cols; ++c) std::swap(Vi.at(i, c), Vi.at(j, c));
  }
  void col_negate(int i) {
    for (int r = 0; r < A.rows; ++r) A.at(r, i) = -A.at(r, i);
    for (int r = 0; r < V.rows; ++r) V.at(r, i) = -V.at(r, i);
    for (int c = 0; c < Vi.cols; ++c) Vi.at(i, c) = -Vi.at(i, c);
  }
  // col_i += k * col_j
  void col_addmul(int i, int j, i64 k) {
    if (k == 0) return;
    for (int r = 0; r < A.rows; ++r)
      A.at(r, i) = checked_add(A.at(r, i), checked_mul(k, A.at(r, j)));
    for (int r = 0; r < V.rows; ++r)
      V.at(r, i) = checked_add(V.at(r, i), checked_mul(k, V.at(r, j)));
    for (int c = 0; c < Vi.cols; ++c)
      Vi.at(j, c) = checked_add(Vi.at(j, c), checked_mul(-k, Vi.at(i, c)));
  }
};

i64 iabs(i64 v) { return v < 0 ? -v : v; }

}  // namespace

Smith smith_normal_form(Mat A) {
  Work w{std::move(A), Mat::identity(0), Mat::identity(0), Mat::identity(0),
         Mat::identity(0)};
  w.U = Mat::identity(w.A.rows);
  w.Ui = Mat::identity(w.A.rows);
  w.V = Mat::identity(w.A.cols);
  w.Vi = Mat::identity(w.A.cols);

  const int n = std::min(w.A.rows, w.A.cols);
  int t = 0;
  while (t < n) {
    // Pivot: smallest nonzero absolute value in the trailing submatrix.
    int pr = -1, pc = -1;
    for (int i = t; i < w.A.rows; ++i)
      for (int j = t; j < w.A.cols; ++j)
        if (w.A.at(i, j) != 0 &&
            (pr < 0 || iabs(w.A.at(i, j)) < iabs(w.A.at(pr, pc)))) {
          pr = i;
          pc = j;
        }
    if (pr < 0) break;
    w.row_swap(t, pr);
    w.col_swap(t, pc);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < w.A.rows; ++i) {
        if (w.A.at(i, t) == 0) continue;
        i64 q = w.A.at(i, t) / w.A.at(t, t);
        w.row_addmul(i, t, -q);
        if (w.A.at(i, t) != 0) {
          // Remainder is strictly smaller; promote it to the pivot.
          w.row_swap(t, i);
          clean = false;
        }
      }
      for (int j = t + 1; j < w.A.cols; ++j) {
        if (w.A.at(t, j) == 0) continue;
        i64 q = w.A.at(t, j) / w.A.at(t, t);
        w.col_addmul(j, t, -q);
        if (w.A.at(t, j) != 0) {
          w.col_swap(t, j);
          clean = false;
        }
      }
      if (clean) {
        // Divisibility: the pivot must divide the whole trailing block.
        for (int i = t + 1; i < w.A.rows && clean; ++i)
          for (int j = t + 1; j < w.A.cols && clean; ++j)
            if (w.A.at(i, j) % w.A.at(t, t) != 0) {
              w.row_addmul(t, i, 1);
              clean = false;
            }
      }
    }
    if (w.A.at(t, t) < 0) w.row_negate(t);
    ++t;
  }

  Smith s;
  s.rank = t;
  s.U = std::move(w.U);
  s.Ui = std::move(w.Ui);
  s.V = std::move(w.V);
  s.Vi = std::move(w.Vi);
  s.D = std::move(w.A);
  return s;
}

Mat kernel_basis(const Mat& A) {
  Smith s = smith_normal_form(A);
  int dim = A.cols - s.rank;
  Mat k(A.cols, dim);
  for (int j = 0; j < dim; ++j)
    for (int r = 0; r < A.cols; ++r) k.at(r, j) = s.V.at(r, s.rank + j);
  return k;
}

Mat column_lattice_basis(const Mat& gens) {
  Smith s = smith_normal_form(gens);
  Mat b(gens.rows, s.rank);
  for (int j = 0; j < s.rank; ++j)
    for (int r = 0; r < gens.rows; ++r)
      b.at(r, j) = checked_mul(s.d(j), s.Ui.at(r, j));
  return b;
}

IntSolver::IntSolver(Mat A) : rows_(A.rows), cols_(A.cols) {
  s_ = smith_normal_form(std::move(A));
}

std::optional<std::vector<i64>> IntSolver::solve(const std::vector<i64>& b) const {
  if (static_cast<int>(b.size()) != rows_)
    fail(ValidationError::Code::ShapeMismatch, {rows_, static_cast<i64>(b.size())}, "solver rhs size");
  std::vector<i64> ub = mat_apply(s_.U, b);
  std::vector<i64> y(cols_, 0);
  for (int i = 0; i < rows_; ++i) {
    if (i < s_.rank) {
      if (ub[i] % s_.d(i) != 0) return std::nullopt;
      if (i < cols_) y[i] = ub[i] / s_.d(i);
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return mat_apply(s_.V, y);
}

}  // namespace gclab
