#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <hq/quartics.hpp>

#include <random>
#include <set>

#include "doctest.h"

using namespace hq;

namespace {

ProjPoint pp(const Field* f, std::initializer_list<long> xs) {
  std::vector<Scalar> v;
  for (long x : xs) v.push_back(Scalar::of_int(f, x));
  return ProjPoint::of(std::move(v));
}

QuarticCoeffs qc(const Field* f, std::initializer_list<long> xs) {
  std::array<Scalar, 5> c{Scalar::of_int(f, 0), Scalar::of_int(f, 0),
                          Scalar::of_int(f, 0), Scalar::of_int(f, 0),
                          Scalar::of_int(f, 0)};
  int i = 0;
  for (long x : xs) c[i++] = Scalar::of_int(f, x);
  return QuarticCoeffs{c};
}

std::set<std::vector<uint32_t>> packed_set(
    const std::vector<std::vector<uint32_t>>& v) {
  return {v.begin(), v.end()};
}

std::vector<uint32_t> pack_pt(const FqCtx& C, std::initializer_list<long> xs) {
  std::vector<uint32_t> v;
  uint32_t lead = 0;
  for (long x : xs) {
    long r = x % (long)C.p();
    if (r < 0) r += C.p();
    uint32_t e = C.encode((uint64_t)r);
    if (!lead && e) lead = e;
    v.push_back(e);
  }
  uint32_t li = C.inv(lead);
  for (auto& e : v) e = C.mul(e, li);
  return v;
}

}  // namespace

TEST_CASE("desmic expansion and coefficients") {
  const Field* Q = Field::Q();
  Desmic d10 = desmic_quartic(Scalar::of_int(Q, 1), Scalar::of_int(Q, 0));
  CHECK(d10.coeffs.proportional_to(qc(Q, {0, 1, -1, 0, 0})));
  // (z0^2-z3^2)(z1^2-z2^2) expanded
  MultiPoly expect =
      MultiPoly::parse(Q, 4, 'z',
                       "1*z0^2*z1^2 - 1*z0^2*z2^2 - 1*z1^2*z3^2 + 1*z2^2*z3^2");
  CHECK(d10.poly == expect);

  Desmic d11 = desmic_quartic(Scalar::of_int(Q, 1), Scalar::of_int(Q, 1));
  CHECK(d11.coeffs.proportional_to(qc(Q, {0, 0, -1, 1, 0})));

  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> dd(-9, 9);
  for (int it = 0; it < 25; ++it) {
    long C = dd(rng), D = dd(rng);
    if (C == 0 && D == 0) continue;
    Desmic dm = desmic_quartic(Scalar::of_int(Q, C), Scalar::of_int(Q, D));
    // A = E = 0 and B + C' + D' = 0
    CHECK(dm.coeffs.c[0].is_zero());
    CHECK(dm.coeffs.c[4].is_zero());
    CHECK((dm.coeffs.c[1] + dm.coeffs.c[2] + dm.coeffs.c[3]).is_zero());
    CHECK(coeffs_of_invariant(dm.poly).c == dm.coeffs.c);
  }
}

TEST_CASE("quartic coeffs to_poly and invariance") {
  const Field* Q = Field::Q();
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<long> dd(-6, 6);
  for (int it = 0; it < 10; ++it) {
    QuarticCoeffs f = qc(Q, {dd(rng), dd(rng), dd(rng), dd(rng), dd(rng)});
    bool allz = true;
    for (auto& x : f.c) allz = allz && x.is_zero();
    if (allz) continue;
    MultiPoly p = f.to_poly();
    for (const auto& g : heis_elements()) CHECK(act_on_poly(g, p) == p);
    if (!p.is_zero()) CHECK(coeffs_of_invariant(p).c == f.c);
  }
  // q-basis agrees with the invariant subspace computation
  auto inv4 = invariant_subspace(Q, 4);
  auto qs = q_basis(Q);
  REQUIRE(inv4.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(inv4[i] == qs[i]);
}

TEST_CASE("singular point censuses") {
  const Field* Q = Field::Q();
  FqCtx C11(11);

  // generic F_AE member: exactly the four coordinate poles
  MultiPoly fae = qc(Q, {0, 1, 2, 4, 0}).to_poly();
  CHECK(fae_generic(Scalar::of_int(Q, 1), Scalar::of_int(Q, 2),
                    Scalar::of_int(Q, 4)));
  auto sing = singular_points(fae, 11);
  std::set<std::vector<uint32_t>> expect;
  expect.insert(pack_pt(C11, {1, 0, 0, 0}));
  expect.insert(pack_pt(C11, {0, 1, 0, 0}));
  expect.insert(pack_pt(C11, {0, 0, 1, 0}));
  expect.insert(pack_pt(C11, {0, 0, 0, 1}));
  CHECK(packed_set(sing) == expect);

  // desmic (1:2): the four poles and the eight cube vertices
  Desmic dm = desmic_quartic(Scalar::of_int(Q, 1), Scalar::of_int(Q, 2));
  auto sing2 = singular_points(dm.poly, 11);
  std::set<std::vector<uint32_t>> expect2 = expect;
  for (int m = 0; m < 8; ++m)
    expect2.insert(pack_pt(
        C11, {1, (m & 1) ? -1 : 1, (m & 2) ? -1 : 1, (m & 4) ? -1 : 1}));
  CHECK(packed_set(sing2) == expect2);
  CHECK(sing2.size() == 12);

  // Fermat-type member in char 7: gradient forces the zero vector
  MultiPoly fermat = qc(Q, {1, 0, 0, 0, 0}).to_poly();
  CHECK(singular_points(fermat, 7).empty());

  // H_{2,2}-stability of the singular set (signed permutations of P^3(F_11))
  const Field* f11 = Field::Fp(11);
  for (const auto& g : heis_elements()) {
    Mat u = schrodinger_matrix(f11, g);
    for (const auto& s : sing2) {
      std::vector<Scalar> v;
      for (uint32_t x : s) v.push_back(Scalar::residue(f11, x));
      auto img = ProjPoint::of(u.apply(v));
      std::vector<uint32_t> w;
      for (const auto& x : img.c) w.push_back((uint32_t)x.res());
      CHECK(expect2.count(w) == 1);
    }
  }
}

TEST_CASE("poles singular across the whole A=0 family, symbolically") {
  const Field* Q = Field::Q();
  auto qs = q_basis(Q);
  auto nodes = desmic_nodes(Q);
  for (int k = 1; k <= 4; ++k)
    for (const auto& pole : nodes.poles) {
      CHECK(qs[k].eval(pole.c).is_zero());
      for (const auto& d : qs[k].gradient()) CHECK(d.eval(pole.c).is_zero());
    }
}

TEST_CASE("the 16 lines lie on the whole pencil, symbolically") {
  const Field* Q = Field::Q();
  // both pencil generators vanish on every line, so all members do
  MultiPoly t1 = desmic_quartic(Scalar::of_int(Q, 1), Scalar::of_int(Q, 0)).poly;
  MultiPoly t2 = desmic_quartic(Scalar::of_int(Q, 0), Scalar::of_int(Q, 1)).poly;
  auto lines = desmic_lines(Q);
  CHECK(lines.size() == 16);
  std::set<std::string> distinct;
  for (const auto& l : lines) {
    CHECK(line_in_hypersurface(l, t1));
    CHECK(line_in_hypersurface(l, t2));
    distinct.insert(l.str());
  }
  CHECK(distinct.size() == 16);
}

TEST_CASE("lines census: fast filter equals naive enumeration") {
  const Field* Q = Field::Q();
  Desmic dm = desmic_quartic(Scalar::of_int(Q, 1), Scalar::of_int(Q, 2));
  MultiPoly fae = qc(Q, {0, 1, 2, 4, 0}).to_poly();
  for (uint64_t q : {7ull, 11ull}) {
    FqCtx C(q);
    for (const MultiPoly* f : {&dm.poly, &fae}) {
      FqPoly fp = FqPoly::compile(C, *f);
      std::set<std::string> naive;
      fq_enumerate_lines(C, [&](const FqLine& L) {
        if (fq_line_in_poly(C, fp, L)) {
          std::string k;
          for (auto x : L.a) k += std::to_string(x) + ",";
          for (auto x : L.b) k += std::to_string(x) + ",";
          naive.insert(k);
        }
      });
      LinesCensus lc = lines_census(*f, q);
      std::set<std::string> fast;
      for (const auto& L : lc.lines) {
        std::string k;
        for (auto x : L.a) k += std::to_string(x) + ",";
        for (auto x : L.b) k += std::to_string(x) + ",";
        fast.insert(k);
      }
      CHECK(fast == naive);
      CHECK(fast.size() == lc.lines.size());
    }
  }
}

TEST_CASE("desmic line counts over prime and quadratic fields") {
  // The 16 pencil lines always reduce.  Extra lines appear exactly at primes
  // dividing C^2-CD+D^2 (the j=0 degeneration): eliminating a line ansatz
  // z2=a*z0+c*z1, z3=b*z0+d*z1 against both pencil generators forces either
  // C=D or C^2-CD+D^2=0, so away from those loci the count is exactly 16,
  // over every F_p and F_{p^2} alike.  The octet at an artifact prime is the
  // one compatible root pair of the elimination system.
  const Field* Q = Field::Q();
  for (long D : {2L, 3L, 4L, 5L, 6L}) {
    Desmic dm = desmic_quartic(Scalar::of_int(Q, 1), Scalar::of_int(Q, D));
    long inv = 1 - D + D * D;
    for (uint64_t p : {7ull, 11ull, 13ull}) {
      size_t np = lines_census(dm.poly, p).lines.size();
      size_t nq = lines_census(dm.poly, p * p).lines.size();
      if (inv % (long)p == 0) {
        CHECK(np == 24);
        CHECK(nq == 24);
      } else {
        CHECK(np == 16);
        CHECK(nq == 16);
      }
    }
  }
  // and the 16 over F_49 at (1:2) are exactly the reductions of the symbolic
  // pencil lines
  Desmic dm = desmic_quartic(Scalar::of_int(Q, 1), Scalar::of_int(Q, 2));
  LinesCensus lc = lines_census(dm.poly, 49);
  REQUIRE(lc.lines.size() == 16);
  FqCtx C(49);
  const Field* f7 = Field::Fp(7);
  std::set<std::string> reduced;
  for (const auto& l : desmic_lines(Q)) {
    std::vector<Scalar> a, b;
    for (const auto& x : l.a.c)
      a.push_back(Scalar::residue(f7, (uint64_t)((x.rat().get_num().get_si() % 7 + 7) % 7)));
    for (const auto& x : l.b.c)
      b.push_back(Scalar::residue(f7, (uint64_t)((x.rat().get_num().get_si() % 7 + 7) % 7)));
    auto lr = plucker_of_line(ProjPoint::of(a), ProjPoint::of(b));
    std::string k;
    for (const auto& x : lr.a.c) k += std::to_string(C.reduce_coeff(x)) + ",";
    for (const auto& x : lr.b.c) k += std::to_string(C.reduce_coeff(x)) + ",";
    reduced.insert(k);
  }
  std::set<std::string> found;
  for (const auto& L : lc.lines) {
    std::string k;
    for (auto x : L.a) k += std::to_string(x) + ",";
    for (auto x : L.b) k += std::to_string(x) + ",";
    found.insert(k);
  }
  CHECK(found == reduced);
}

TEST_CASE("quartic through line") {
  const Field* Q = Field::Q();
  // the (1:1:1:t) line lies on the whole desmic pencil: non-unique
  auto l = plucker_of_line(pp(Q, {1, 1, 1, 0}), pp(Q, {0, 0, 0, 1}));
  auto r = quartic_through_line(l);
  CHECK(r.kind == QuarticThroughLine::non_unique);
  CHECK(r.kernel_dim >= 2);

  // each of the 16 desmic lines: solution space contains the pencil member
  Desmic dm = desmic_quartic(Scalar::of_int(Q, 3), Scalar::of_int(Q, -2));
  for (const auto& dl : desmic_lines(Q)) {
    auto res = quartic_through_line(dl);
    CHECK(res.kernel_dim >= 2);
    // membership: restriction of the member to the line vanishes
    CHECK(line_in_hypersurface(dl, dm.poly));
  }

  // random F_13 lines: both unique and none occur, and unique solutions are
  // genuine (restriction vanishes)
  const Field* f13 = Field::Fp(13);
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> d(0, 12);
  int uniq = 0, none = 0, trials = 0;
  while ((uniq < 10 || none < 10) && ++trials < 4000) {
    std::vector<Scalar> a, b;
    for (int i = 0; i < 4; ++i) a.push_back(Scalar::of_int(f13, d(rng)));
    for (int i = 0; i < 4; ++i) b.push_back(Scalar::of_int(f13, d(rng)));
    bool za = true, zb = true;
    for (auto& x : a) za = za && x.is_zero();
    for (auto& x : b) zb = zb && x.is_zero();
    if (za || zb) continue;
    ProjPoint P = ProjPoint::of(a), R = ProjPoint::of(b);
    if (P == R) continue;
    auto line = plucker_of_line(P, R);
    auto res = quartic_through_line(line);
    if (res.kind == QuarticThroughLine::unique) {
      ++uniq;
      CHECK(line_in_hypersurface(line, res.coeffs->to_poly()));
    } else if (res.kind == QuarticThroughLine::none) {
      ++none;
    }
  }
  CHECK(uniq >= 10);
  CHECK(none >= 10);
}

TEST_CASE("reye incidence") {
  const Field* Q = Field::Q();
  auto rows = reye_incidence(Scalar::of_int(Q, 1), Scalar::of_int(Q, 2));
  CHECK(rows.size() == 16);

  // the (1:1:1:t) line carries pole (0:0:0:1), even (1:1:1:1), odd (1:1:1:-1)
  auto l = plucker_of_line(pp(Q, {1, 1, 1, 0}), pp(Q, {0, 0, 0, 1}));
  bool found = false;
  for (const auto& row : rows)
    if (row.line == l) {
      found = true;
      CHECK(row.pole == pp(Q, {0, 0, 0, 1}));
      CHECK(row.even == pp(Q, {1, 1, 1, 1}));
      CHECK(row.odd == pp(Q, {1, 1, 1, -1}));
    }
  CHECK(found);

  // main diagonal through (1:1:1:1) and (1:-1:-1:-1) passes pole (1:0:0:0)
  auto diag = plucker_of_line(pp(Q, {1, 1, 1, 1}), pp(Q, {1, -1, -1, -1}));
  found = false;
  for (const auto& row : rows)
    if (row.line == diag) {
      found = true;
      CHECK(row.pole == pp(Q, {1, 0, 0, 0}));
      CHECK(row.even == pp(Q, {1, 1, 1, 1}));
    }
  CHECK(found);

  CHECK_THROWS_AS(reye_incidence(Scalar::of_int(Q, 0), Scalar::of_int(Q, 1)),
                  Error);
  // C=D degenerates to a quadric pair
  CHECK_THROWS_AS(reye_incidence(Scalar::of_int(Q, 2), Scalar::of_int(Q, 2)),
                  Error);
}

TEST_CASE("fundamental square detection") {
  const Field* Q = Field::Q();
  auto s = is_fundamental_square(qc(Q, {1, 2, 2, 2, 0}));
  REQUIRE(s.has_value());
  MultiPoly sumsq = MultiPoly::parse(
      Q, 4, 'z', "1*z0^2 + 1*z1^2 + 1*z2^2 + 1*z3^2");
  CHECK(*s == sumsq);

  auto s2 = is_fundamental_square(qc(Q, {0, 1, 0, 0, 2}));
  REQUIRE(s2.has_value());
  CHECK(*s2 == MultiPoly::parse(Q, 4, 'z', "1*z0^1*z1^1 + 1*z2^1*z3^1"));

  CHECK(!is_fundamental_square(qc(Q, {1, 1, 1, 1, 0})).has_value());
  // scaling invariance
  auto s3 = is_fundamental_square(qc(Q, {3, 6, 6, 6, 0}));
  REQUIRE(s3.has_value());
  CHECK(*s3 == sumsq);
}
