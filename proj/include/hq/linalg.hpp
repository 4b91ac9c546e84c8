// Dense exact linear algebra over any Scalar field: RREF, rank, kernel basis,
// particular solutions.  Sizes here are tiny (<= a few hundred rows), so the
// classical fraction-based elimination is the right tool.
#pragma once

#include <optional>
#include <vector>

#include "hq/numbers.hpp"

namespace hq {

struct Mat {
  const Field* field;
  size_t rows = 0, cols = 0;
  std::vector<Scalar> a;  // row-major

  Mat(const Field* f, size_t r, size_t c)
      : field(f), rows(r), cols(c), a(r * c, Scalar::of_int(f, 0)) {}

  Scalar& at(size_t r, size_t c) { return a[r * cols + c]; }
  const Scalar& at(size_t r, size_t c) const { return a[r * cols + c]; }

  static Mat identity(const Field* f, size_t n);
  static Mat from_rows(const Field* f,
                       const std::vector<std::vector<Scalar>>& rows);
  Mat transpose() const;
  bool operator==(const Mat& o) const;
  friend Mat operator*(const Mat& x, const Mat& y);
  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;  // M v
};

struct LinSolve {
  size_t rank = 0;
  bool consistent = true;  // meaningful only when an rhs was supplied
  std::optional<std::vector<Scalar>> particular;
  // kernel basis: one vector per free column, entry 1 at its free column,
  // ascending free-column order (canonical)
  std::vector<std::vector<Scalar>> kernel;
  std::vector<size_t> pivot_cols;
};

// in-place reduced row echelon form; returns pivot columns
std::vector<size_t> rref(Mat& m);

LinSolve solve_linear(Mat m, const std::vector<Scalar>* rhs = nullptr);

size_t rank_of(const Mat& m);

// inverse of a square matrix; throws on singular input
Mat inverse(const Mat& m);

Scalar determinant(Mat m);

}  // namespace hq
