#include "hq/linalg.hpp"

namespace hq {

Mat Mat::identity(const Field* f, size_t n) {
  Mat m(f, n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::of_int(f, 1);
  return m;
}

Mat Mat::from_rows(const Field* f,
                   const std::vector<std::vector<Scalar>>& rows) {
  size_t r = rows.size(), c = r ? rows[0].size() : 0;
  Mat m(f, r, c);
  for (size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error("ragged matrix");
    for (size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Mat Mat::transpose() const {
  Mat t(field, cols, rows);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

bool Mat::operator==(const Mat& o) const {
  if (rows != o.rows || cols != o.cols || field != o.field) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != o.a[i]) return false;
  return true;
}

Mat operator*(const Mat& x, const Mat& y) {
  if (x.cols != y.rows || x.field != y.field) throw Error("matrix shape mismatch");
  Mat r(x.field, x.rows, y.cols);
  for (size_t i = 0; i < x.rows; ++i)
    for (size_t k = 0; k < x.cols; ++k) {
      if (x.at(i, k).is_zero()) continue;
      for (size_t j = 0; j < y.cols; ++j)
        r.at(i, j) += x.at(i, k) * y.at(k, j);
    }
  return r;
}

std::vector<Scalar> Mat::apply(const std::vector<Scalar>& v) const {
  if (v.size() != cols) throw Error("vector length mismatch");
  std::vector<Scalar> out(rows, Scalar::of_int(field, 0));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j)
      if (!at(i, j).is_zero()) out[i] += at(i, j) * v[j];
  return out;
}

std::vector<size_t> rref(Mat& m) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
    size_t sel = row;
    while (sel < m.rows && m.at(sel, col).is_zero()) ++sel;
    if (sel == m.rows) continue;
    for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(row, j));
    Scalar piv_inv = m.at(row, col).inv();
    for (size_t j = col; j < m.cols; ++j) m.at(row, j) *= piv_inv;
    for (size_t i = 0; i < m.rows; ++i) {
      if (i == row || m.at(i, col).is_zero()) continue;
      Scalar factor = m.at(i, col);
      for (size_t j = col; j < m.cols; ++j)
        m.at(i, j) -= factor * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

LinSolve solve_linear(Mat m, const std::vector<Scalar>* rhs) {
  const Field* f = m.field;
  size_t n = m.cols;
  Mat work = rhs ? Mat(f, m.rows, n + 1) : m;
  if (rhs) {
    if (rhs->size() != m.rows) throw Error("rhs length mismatch");
    for (size_t i = 0; i < m.rows; ++i) {
      for (size_t j = 0; j < n; ++j) work.at(i, j) = m.at(i, j);
      work.at(i, n) = (*rhs)[i];
    }
  }
  std::vector<size_t> pivots = rref(work);

  LinSolve out;
  out.consistent = true;
  if (rhs && !pivots.empty() && pivots.back() == n) {
    out.consistent = false;
    pivots.pop_back();  // pivot in the rhs column = inconsistency marker
  }
  out.pivot_cols = pivots;
  out.rank = pivots.size();

  std::vector<bool> is_pivot(n, false);
  for (size_t c : pivots) is_pivot[c] = true;

  for (size_t fc = 0; fc < n; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<Scalar> v(n, Scalar::of_int(f, 0));
    v[fc] = Scalar::of_int(f, 1);
    for (size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = -work.at(r, fc);
    out.kernel.push_back(std::move(v));
  }

  if (rhs && out.consistent) {
    std::vector<Scalar> x(n, Scalar::of_int(f, 0));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = work.at(r, n);
    out.particular = std::move(x);
  }
  return out;
}

size_t rank_of(const Mat& m) {
  Mat w = m;
  return rref(w).size();
}

Mat inverse(const Mat& m) {
  if (m.rows != m.cols) throw Error("inverse of non-square matrix");
  size_t n = m.rows;
  Mat work(m.field, n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) work.at(i, j) = m.at(i, j);
    work.at(i, n + i) = Scalar::of_int(m.field, 1);
  }
  rref(work);
  for (size_t i = 0; i < n; ++i)
    if (!(work.at(i, i).is_one())) throw Error("singular matrix");
  Mat inv(m.field, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv.at(i, j) = work.at(i, n + j);
  return inv;
}

Scalar determinant(Mat m) {
  if (m.rows != m.cols) throw Error("determinant of non-square matrix");
  const Field* f = m.field;
  Scalar det = Scalar::of_int(f, 1);
  size_t n = m.rows;
  for (size_t col = 0; col < n; ++col) {
    size_t sel = col;
    while (sel < n && m.at(sel, col).is_zero()) ++sel;
    if (sel == n) return Scalar::of_int(f, 0);
    if (sel != col) {
      for (size_t j = 0; j < n; ++j) std::swap(m.at(sel, j), m.at(col, j));
      det = -det;
    }
    det *= m.at(col, col);
    Scalar inv = m.at(col, col).inv();
    for (size_t i = col + 1; i < n; ++i) {
      if (m.at(i, col).is_zero()) continue;
      Scalar factor = m.at(i, col) * inv;
      for (size_t j = col; j < n; ++j) m.at(i, j) -= factor * m.at(col, j);
    }
  }
  return det;
}

}  // namespace hq
