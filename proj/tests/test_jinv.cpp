#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <hq/jinv.hpp>

#include <random>

#include "doctest.h"

using namespace hq;

namespace {

ProjPoint pp(const Field* f, std::initializer_list<long> xs) {
  std::vector<Scalar> v;
  for (long x : xs) v.push_back(Scalar::of_int(f, x));
  return ProjPoint::of(std::move(v));
}

Scalar q(const Field* f, long n, long d = 1) {
  return Scalar::of_int(f, n) / Scalar::of_int(f, d);
}

}  // namespace

TEST_CASE("tangent cone at desmic nodes") {
  const Field* Q = Field::Q();
  // (C-D) z1^2 - C z2^2 + D z3^2 in the direction coordinates (z1,z2,z3)
  for (auto [C, D] : std::vector<std::pair<long, long>>{{1, 2}, {3, 5}, {-2, 7}}) {
    Desmic dm = desmic_quartic(q(Q, C), q(Q, D));
    ConicForm cone = tangent_cone(dm.poly, pp(Q, {1, 0, 0, 0}));
    MultiPoly expect =
        MultiPoly::monomial(Q, {2, 0, 0}, q(Q, C - D)) +
        MultiPoly::monomial(Q, {0, 2, 0}, q(Q, -C)) +
        MultiPoly::monomial(Q, {0, 0, 2}, q(Q, D));
    CHECK(cone.to_poly() == expect);
    CHECK(cone.smooth());
    // cones at the cube vertices exist and are smooth too
    ConicForm even = tangent_cone(dm.poly, pp(Q, {1, 1, 1, 1}));
    CHECK(even.smooth());
    ConicForm odd = tangent_cone(dm.poly, pp(Q, {1, 1, 1, -1}));
    CHECK(odd.smooth());
  }
  // C=D: cone degenerates to z3^2 - z2^2, reported but not smooth
  Desmic deg = desmic_quartic(q(Q, 1), q(Q, 1));
  ConicForm cone = tangent_cone(deg.poly, pp(Q, {1, 0, 0, 0}));
  MultiPoly expect = MultiPoly::monomial(Q, {0, 0, 2}, q(Q, 1)) +
                     MultiPoly::monomial(Q, {0, 2, 0}, q(Q, -1));
  CHECK(cone.to_poly() == expect);
  CHECK(!cone.smooth());
  // off-surface and smooth-point errors
  Desmic dm = desmic_quartic(q(Q, 1), q(Q, 2));
  MultiPoly fermat = MultiPoly::parse(
      Q, 4, 'z', "1*z0^4 + 1*z1^4 + 1*z2^4 + 1*z3^4");
  CHECK_THROWS_WITH(tangent_cone(fermat, pp(Q, {1, 0, 0, 0})),
                    "point not on the surface");
  CHECK_THROWS_WITH(tangent_cone(dm.poly, pp(Q, {1, 1, 1, 0})),
                    "point not singular");
}

TEST_CASE("conic cross ratio conventions") {
  const Field* Q = Field::Q();
  // chart identity: slopes (oo, 0, 1, l) in convention order give back l
  Scalar half = q(Q, 1, 2);
  ConicForm par{Q,
                {{{q(Q, 0), half, q(Q, 0)},
                  {half, q(Q, 0), q(Q, 0)},
                  {q(Q, 0), q(Q, 0), q(Q, -1)}}}};  // z0 z1 = z2^2
  std::array<ProjPoint, 4> pts{pp(Q, {1, 0, 0}), pp(Q, {0, 1, 0}),
                               pp(Q, {1, 1, 1}), pp(Q, {49, 9, 21})};
  // last point is t = 3/7 on (1, t^2, t): slope 1/t = 7/3
  CrossRatio cr = conic_cross_ratio(par, pts, pp(Q, {1, 0, 0}));
  CHECK(cr.same_scalar(q(Q, 7, 3)));

  // the desmic tangent cone: branch points (1:±1:±1), center (1:-1:1);
  // lambda lands in the S3 orbit of C/D (checked through j)
  for (auto [C, D] : std::vector<std::pair<long, long>>{{1, 2}, {2, 5}, {3, -4}}) {
    Desmic dm = desmic_quartic(q(Q, C), q(Q, D));
    ConicForm cone = tangent_cone(dm.poly, pp(Q, {1, 0, 0, 0}));
    std::array<ProjPoint, 4> bp{pp(Q, {1, 1, 1}), pp(Q, {1, 1, -1}),
                                pp(Q, {1, -1, 1}), pp(Q, {1, -1, -1})};
    CrossRatio lam = conic_cross_ratio(cone, bp, pp(Q, {1, -1, 1}));
    CHECK((j_from_lambda(lam) - j_closed_form(q(Q, C), q(Q, D))).is_zero());
    // independence of the projection center, at the level of j
    for (const auto& center : bp) {
      CrossRatio l2 = conic_cross_ratio(cone, bp, center);
      CHECK((j_from_lambda(l2) - j_from_lambda(lam)).is_zero());
    }
  }

  // degenerate conic rejected
  Desmic deg = desmic_quartic(q(Q, 1), q(Q, 1));
  ConicForm bad = tangent_cone(deg.poly, pp(Q, {1, 0, 0, 0}));
  std::array<ProjPoint, 4> bp{pp(Q, {1, 1, 1}), pp(Q, {1, 1, -1}),
                              pp(Q, {1, -1, 1}), pp(Q, {1, -1, -1})};
  CHECK_THROWS_WITH(conic_cross_ratio(bad, bp, pp(Q, {1, -1, 1})),
                    "conic singular");
}

TEST_CASE("j from lambda") {
  const Field* Q = Field::Q();
  auto lam = [&](long n, long d) {
    return CrossRatio{q(Q, n), q(Q, d)};
  };
  CHECK(j_from_lambda(lam(-1, 1)) == q(Q, 1728));
  CHECK(j_from_lambda(lam(2, 1)) == q(Q, 1728));
  CHECK(j_from_lambda(lam(3, 1)) == q(Q, 21952, 9));
  CHECK_THROWS_WITH(j_from_lambda(lam(0, 1)), "lambda = 0");
  CHECK_THROWS_WITH(j_from_lambda(lam(5, 5)), "lambda = 1");
  CHECK_THROWS_WITH(j_from_lambda(lam(1, 0)), "lambda = infinity");

  // S3 invariance on 100 random lambda
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> dd(-60, 60);
  int done = 0;
  while (done < 100) {
    long n = dd(rng), d = dd(rng);
    if (d == 0 || n == 0 || n == d) continue;
    ++done;
    Scalar j0 = j_from_lambda(lam(n, d));
    CHECK(j_from_lambda(lam(d, n)) == j0);          // 1/l
    CHECK(j_from_lambda(lam(d - n, d)) == j0);      // 1-l
    CHECK(j_from_lambda(lam(d, d - n)) == j0);      // 1/(1-l)
    CHECK(j_from_lambda(lam(n, n - d)) == j0);      // l/(l-1)
    CHECK(j_from_lambda(lam(n - d, n)) == j0);      // (l-1)/l
  }
}

TEST_CASE("closed form and the rational-function identity") {
  const Field* Q = Field::Q();
  CHECK(j_closed_form(q(Q, 1), q(Q, -1)) == q(Q, 1728));
  CHECK(j_closed_form(q(Q, 1), q(Q, 3)) == q(Q, 21952, 9));
  CHECK_THROWS_WITH(j_closed_form(q(Q, 1), q(Q, 1)), "C = D");
  CHECK_THROWS_WITH(j_closed_form(q(Q, 0), q(Q, 1)), "C = 0");
  CHECK_THROWS_WITH(j_closed_form(q(Q, 1), q(Q, 0)), "D = 0");

  // the lambda formula at lambda = C/D equals the closed form as a rational
  // function in (C,D): cross-multiplied MultiPoly identity, not sampling
  MultiPoly C = MultiPoly::variable(Q, 2, 0);
  MultiPoly D = MultiPoly::variable(Q, 2, 1);
  auto [ln, ld] = j_lambda_pair_poly(C, D);
  auto [cn, cd] = j_closed_pair_poly(C, D);
  CHECK(ln * cd == cn * ld);
  CHECK(ld.total_degree() == 6);
  CHECK(ln.total_degree() == 6);
}

TEST_CASE("desmic j pipeline") {
  const Field* Q = Field::Q();
  JPipeline p12 = desmic_j_pipeline(q(Q, 1), q(Q, 2));
  CHECK(p12.j == q(Q, 1728));
  bool has_half = false;
  for (const auto& cr : p12.lambda_orbit)
    has_half = has_half || cr.same_scalar(q(Q, 1, 2));
  CHECK(has_half);
  CHECK(p12.branch.size() == 4);

  JPipeline p13 = desmic_j_pipeline(q(Q, 1), q(Q, 3));
  CHECK(p13.j == q(Q, 21952, 9));

  CHECK_THROWS_WITH(desmic_j_pipeline(q(Q, 1), q(Q, 1)), "C = D");
  CHECK_THROWS_WITH(desmic_j_pipeline(q(Q, 0), q(Q, 1)), "C = 0");

  // pipeline agrees with the closed form on random admissible (C:D)
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<long> dd(-30, 30);
  int done = 0;
  while (done < 20) {
    long c = dd(rng), d = dd(rng);
    if (c == 0 || d == 0 || c == d) continue;
    ++done;
    JPipeline p = desmic_j_pipeline(q(Q, c), q(Q, d));
    CHECK(p.j == j_closed_form(q(Q, c), q(Q, d)));
    bool has_ratio = false;
    for (const auto& cr : p.lambda_orbit)
      has_ratio = has_ratio || cr.same_scalar(q(Q, c, d));
    CHECK(has_ratio);
  }
}
