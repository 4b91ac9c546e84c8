// Node tangent cones, cross-ratios on smooth conics via projection, and the
// j-invariant of the desmic pencil: both the geometric pipeline (tangent cone
// at a pole -> four branch directions -> cross-ratio -> j) and the closed
// form 2^8 (C^2-CD+D^2)^3 / C^2 D^2 (C-D)^2, kept as exact rational data so
// the two can be compared as rational functions, not merely pointwise.
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "hq/poly.hpp"
#include "hq/projective.hpp"
#include "hq/quartics.hpp"

namespace hq {

// ternary quadratic form x^T M x with M symmetric
struct ConicForm {
  const Field* field;
  std::array<std::array<Scalar, 3>, 3> m;

  Scalar eval(const std::vector<Scalar>& x) const;
  std::vector<Scalar> gradient_at(const std::vector<Scalar>& x) const;
  Scalar det() const;
  bool smooth() const { return !det().is_zero(); }
  MultiPoly to_poly() const;  // 3 variables
  std::string str() const { return to_poly().str('z'); }
};

// a point of P^1, kept as an exact projective pair
struct CrossRatio {
  Scalar num, den;

  bool is_infinite() const { return den.is_zero(); }
  Scalar value() const;  // throws on the infinite point
  bool same(const CrossRatio& o) const;
  bool same_scalar(const Scalar& v) const;
  std::string str() const;
};

// quadratic part of f in the affine chart centered at a singular point; the
// form lives on the P^2 of directions (the three non-pivot coordinates,
// ascending).  Throws if the point is off the surface, nonsingular, or the
// quadratic part vanishes.
ConicForm tangent_cone(const MultiPoly& f, const ProjPoint& node);

// cross-ratio of the four projection directions from center (all five points
// on the smooth conic; tangent direction used when center is one of the
// four).  Slope chart: the line a0*z0+a1*z1+a2*z2 = 0 through the center gets
// slope (-a1 : a2), the affine dw/dy of the chart z0 = 1, y = z1, w = z2.
// Convention cr(s1,s2,s3,s4) = ((s1-s3)(s2-s4)) / ((s1-s4)(s2-s3)).
CrossRatio conic_cross_ratio(const ConicForm& conic,
                             const std::array<ProjPoint, 4>& pts,
                             const ProjPoint& center);

// 256 (l^2-l+1)^3 / (l^2 (l-1)^2); throws on l in {0, 1, oo}
Scalar j_from_lambda(const CrossRatio& lambda);

// 2^8 (C^2-CD+D^2)^3 / (C^2 D^2 (C-D)^2); named errors for C=0, D=0, C=D
Scalar j_closed_form(const Scalar& C, const Scalar& D);

// the shared formulas as exact numerator/denominator pairs; instantiated
// with Scalar by the evaluators above and with bivariate MultiPoly by the
// rational-function identity check
std::pair<MultiPoly, MultiPoly> j_lambda_pair_poly(const MultiPoly& n,
                                                   const MultiPoly& d);
std::pair<MultiPoly, MultiPoly> j_closed_pair_poly(const MultiPoly& C,
                                                   const MultiPoly& D);

struct JPipeline {
  ConicForm cone;
  std::vector<ProjPoint> branch;      // four directions to the even vertices
  CrossRatio lambda;                  // from the fixed projection center
  std::vector<CrossRatio> lambda_orbit;  // S3 orbit, deduplicated
  Scalar j;
};

// tangent cone at pole (1:0:0:0) -> branch directions -> cross-ratio with
// center at the branch point (1:-1:1) -> j
JPipeline desmic_j_pipeline(const Scalar& C, const Scalar& D);

}  // namespace hq
