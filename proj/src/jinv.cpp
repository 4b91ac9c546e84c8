#include "hq/jinv.hpp"

#include <algorithm>

namespace hq {

Scalar ConicForm::eval(const std::vector<Scalar>& x) const {
  if ((int)x.size() != 3) throw Error("conic expects 3 coordinates");
  Scalar s = Scalar::of_int(field, 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s = s + m[i][j] * x[i] * x[j];
  return s;
}

std::vector<Scalar> ConicForm::gradient_at(const std::vector<Scalar>& x) const {
  if ((int)x.size() != 3) throw Error("conic expects 3 coordinates");
  std::vector<Scalar> g;
  for (int i = 0; i < 3; ++i) {
    Scalar s = Scalar::of_int(field, 0);
    for (int j = 0; j < 3; ++j) s = s + m[i][j] * x[j];
    g.push_back(s + s);
  }
  return g;
}

Scalar ConicForm::det() const {
  Scalar s = Scalar::of_int(field, 0);
  s = s + m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
  s = s - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]);
  s = s + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  return s;
}

MultiPoly ConicForm::to_poly() const {
  MultiPoly p = MultiPoly::zero(field, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      Scalar c = (i == j) ? m[i][i] : m[i][j] + m[j][i];
      if (c.is_zero()) continue;
      std::vector<uint32_t> e(3, 0);
      e[i] += 1;
      e[j] += 1;
      p = p + MultiPoly::monomial(field, e, c);
    }
  return p;
}

Scalar CrossRatio::value() const {
  if (is_infinite()) throw Error("cross-ratio is infinite");
  return num / den;
}

bool CrossRatio::same(const CrossRatio& o) const {
  return (num * o.den - o.num * den).is_zero();
}

bool CrossRatio::same_scalar(const Scalar& v) const {
  return (num - v * den).is_zero();
}

std::string CrossRatio::str() const {
  if (is_infinite()) return "oo";
  return value().str();
}

ConicForm tangent_cone(const MultiPoly& f, const ProjPoint& node) {
  const Field* fd = f.field();
  if (f.nvars() != 4) throw Error("expected a surface in P^3");
  if ((int)node.c.size() != 4) throw Error("expected a point of P^3");
  int pivot = 0;
  while (pivot < 4 && node.c[pivot].is_zero()) ++pivot;
  if (pivot == 4) throw Error("zero point");
  // recenter: z_pivot -> 1, z_k -> node_k + z_k
  std::vector<MultiPoly> images;
  for (int k = 0; k < 4; ++k) {
    if (k == pivot) {
      images.push_back(MultiPoly::constant(fd, 4, node.c[k]));
    } else {
      images.push_back(MultiPoly::constant(fd, 4, node.c[k]) +
                       MultiPoly::variable(fd, 4, k));
    }
  }
  MultiPoly g = f.substitute(images);
  std::vector<int> coords;  // non-pivot coordinates, ascending
  for (int k = 0; k < 4; ++k)
    if (k != pivot) coords.push_back(k);
  Scalar zero = Scalar::of_int(fd, 0);
  std::array<std::array<Scalar, 3>, 3> m{
      {{zero, zero, zero}, {zero, zero, zero}, {zero, zero, zero}}};
  bool quad = false;
  for (const auto& t : g.terms()) {
    uint32_t deg = 0;
    for (uint32_t e : t.exps) deg += e;
    if (deg == 0) throw Error("point not on the surface");
    if (deg == 1) throw Error("point not singular");
    if (deg != 2) continue;
    quad = true;
    int a = -1, b = -1;
    for (int k = 0; k < 4; ++k) {
      if (t.exps[k] == 2) a = b = k;
      if (t.exps[k] == 1) (a < 0 ? a : b) = k;
    }
    int ia = (int)(std::find(coords.begin(), coords.end(), a) - coords.begin());
    int ib = (int)(std::find(coords.begin(), coords.end(), b) - coords.begin());
    if (ia == ib) {
      m[ia][ia] = t.coeff;
    } else {
      Scalar half = t.coeff / Scalar::of_int(fd, 2);
      m[ia][ib] = half;
      m[ib][ia] = half;
    }
  }
  if (!quad) throw Error("quadratic part vanishes at the point");
  return ConicForm{fd, m};
}

namespace {

std::array<Scalar, 3> cross3(const std::vector<Scalar>& a,
                             const std::vector<Scalar>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

}  // namespace

CrossRatio conic_cross_ratio(const ConicForm& conic,
                             const std::array<ProjPoint, 4>& pts,
                             const ProjPoint& center) {
  if (!conic.smooth()) throw Error("conic singular");
  if (!conic.eval(center.c).is_zero()) throw Error("center off the conic");
  for (const auto& p : pts)
    if (!conic.eval(p.c).is_zero()) throw Error("point off the conic");
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (pts[i] == pts[j]) throw Error("points not distinct");
  // slope of the joining line (tangent when the point is the center)
  std::array<std::array<Scalar, 2>, 4> slope{};
  for (int i = 0; i < 4; ++i) {
    std::array<Scalar, 3> line{};
    if (pts[i] == center) {
      auto g = conic.gradient_at(center.c);
      line = {g[0], g[1], g[2]};
    } else {
      line = cross3(center.c, pts[i].c);
    }
    Scalar alpha = -line[1], beta = line[2];
    if (alpha.is_zero() && beta.is_zero())
      throw Error("projection chart degenerate");
    slope[i] = {alpha, beta};
  }
  auto d = [&](int i, int j) {
    return slope[i][0] * slope[j][1] - slope[j][0] * slope[i][1];
  };
  CrossRatio cr{d(0, 2) * d(1, 3), d(0, 3) * d(1, 2)};
  if (cr.num.is_zero() && cr.den.is_zero())
    throw Error("degenerate cross-ratio");
  return cr;
}

std::pair<MultiPoly, MultiPoly> j_lambda_pair_poly(const MultiPoly& n,
                                                   const MultiPoly& d) {
  const Field* f = n.field();
  MultiPoly q = n * n - n * d + d * d;
  MultiPoly num = (q * q * q).scaled(Scalar::of_int(f, 256));
  MultiPoly nd = n - d;
  MultiPoly den = n * n * d * d * nd * nd;
  return {num, den};
}

std::pair<MultiPoly, MultiPoly> j_closed_pair_poly(const MultiPoly& C,
                                                   const MultiPoly& D) {
  const Field* f = C.field();
  MultiPoly q = C * C - C * D + D * D;
  MultiPoly num = (q * q * q).scaled(Scalar::of_int(f, 256));
  MultiPoly cd = C - D;
  MultiPoly den = C * C * D * D * cd * cd;
  return {num, den};
}

Scalar j_from_lambda(const CrossRatio& lambda) {
  const Scalar &n = lambda.num, &d = lambda.den;
  if (d.is_zero()) throw Error("lambda = infinity");
  if (n.is_zero()) throw Error("lambda = 0");
  if ((n - d).is_zero()) throw Error("lambda = 1");
  const Field* f = n.field();
  Scalar q = n * n - n * d + d * d;
  Scalar nd = n - d;
  return Scalar::of_int(f, 256) * q * q * q / (n * n * d * d * nd * nd);
}

Scalar j_closed_form(const Scalar& C, const Scalar& D) {
  if (C.is_zero()) throw Error("C = 0");
  if (D.is_zero()) throw Error("D = 0");
  if ((C - D).is_zero()) throw Error("C = D");
  const Field* f = C.field();
  Scalar q = C * C - C * D + D * D;
  Scalar cd = C - D;
  return Scalar::of_int(f, 256) * q * q * q / (C * C * D * D * cd * cd);
}

JPipeline desmic_j_pipeline(const Scalar& C, const Scalar& D) {
  if (C.is_zero()) throw Error("C = 0");
  if (D.is_zero()) throw Error("D = 0");
  if ((C - D).is_zero()) throw Error("C = D");
  const Field* f = C.field();
  Desmic dm = desmic_quartic(C, D);
  std::vector<Scalar> pole{Scalar::of_int(f, 1), Scalar::of_int(f, 0),
                           Scalar::of_int(f, 0), Scalar::of_int(f, 0)};
  JPipeline out{tangent_cone(dm.poly, ProjPoint::of(pole)),
                {},
                CrossRatio{Scalar::of_int(f, 0), Scalar::of_int(f, 0)},
                {},
                Scalar::of_int(f, 0)};
  // branch points: directions from the pole to the four even vertices
  for (const auto& v : desmic_nodes(f).even) {
    std::vector<Scalar> dir{v.c[1], v.c[2], v.c[3]};
    ProjPoint p = ProjPoint::of(dir);
    if (!out.cone.eval(p.c).is_zero())
      throw Error("branch direction off the tangent cone");
    out.branch.push_back(p);
  }
  std::sort(out.branch.begin(), out.branch.end(),
            [](const ProjPoint& a, const ProjPoint& b) {
              return a.str() < b.str();
            });
  std::vector<Scalar> cc{Scalar::of_int(f, 1), Scalar::of_int(f, -1),
                         Scalar::of_int(f, 1)};
  ProjPoint center = ProjPoint::of(cc);
  std::array<ProjPoint, 4> pts{out.branch[0], out.branch[1], out.branch[2],
                               out.branch[3]};
  out.lambda = conic_cross_ratio(out.cone, pts, center);
  // S3 orbit {l, 1/l, 1-l, 1/(1-l), l/(l-1), (l-1)/l}
  const Scalar &n = out.lambda.num, &d = out.lambda.den;
  std::vector<CrossRatio> orbit{{n, d},     {d, n},     {d - n, d},
                                {d, d - n}, {n, n - d}, {n - d, n}};
  for (const auto& cr : orbit) {
    bool seen = false;
    for (const auto& kept : out.lambda_orbit) seen = seen || kept.same(cr);
    if (!seen) out.lambda_orbit.push_back(cr);
  }
  out.j = j_from_lambda(out.lambda);
  for (const auto& cr : out.lambda_orbit)
    if (!(j_from_lambda(cr) - out.j).is_zero())
      throw Error("j not constant on the lambda orbit");
  return out;
}

}  // namespace hq
