// exactcore: scalar fields, polynomials, linear algebra.
// The elimination oracle here is written directly on mpq_class so it shares
// no code with hq::solve_linear.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hq/linalg.hpp"
#include "hq/poly.hpp"

using namespace hq;

namespace {

Scalar rnd_scalar(const Field* f, std::mt19937_64& rng) {
  switch (f->kind()) {
    case FieldKind::rational: {
      std::uniform_int_distribution<long> num(-20, 20), den(1, 10);
      return Scalar::rational(num(rng), den(rng));
    }
    case FieldKind::prime: {
      std::uniform_int_distribution<uint64_t> d(0, f->prime() - 1);
      return Scalar::residue(f, d(rng));
    }
    case FieldKind::quad:
      return Scalar::quad(f, rnd_scalar(f->base(), rng),
                          rnd_scalar(f->base(), rng));
  }
  throw Error("bad field");
}

// hand-rolled vars for the N equations (6 vars, letter u)
MultiPoly sum_u(const Field* f) {
  MultiPoly s = MultiPoly::zero(f, 6);
  for (int i = 0; i < 6; ++i) s = s + MultiPoly::variable(f, 6, i);
  return s;
}

MultiPoly fn_quintic(const Field* f) {
  MultiPoly s = MultiPoly::zero(f, 6);
  for (int i = 0; i < 6; ++i) {
    std::vector<uint32_t> e(6, 1);
    e[i] = 0;
    s = s + MultiPoly::monomial(f, e, Scalar::of_int(f, 1));
  }
  return s;
}

std::vector<Scalar> pt(const Field* f, std::initializer_list<long> xs) {
  std::vector<Scalar> v;
  for (long x : xs) v.push_back(Scalar::of_int(f, x));
  return v;
}

}  // namespace

TEST_CASE("field axioms on random triples") {
  const Field* fields[] = {Field::Q(),
                           Field::Fp(11),
                           Field::Fp(13),
                           Field::quad(Field::Q(), Scalar::rational(-1)),
                           Field::quad(Field::Q(), Scalar::rational(3)),
                           Field::Fp2(7),
                           Field::Fp2(13)};
  std::mt19937_64 rng(42);
  for (const Field* f : fields) {
    Scalar one = Scalar::of_int(f, 1), zero = Scalar::of_int(f, 0);
    for (int it = 0; it < 1000; ++it) {
      Scalar a = rnd_scalar(f, rng), b = rnd_scalar(f, rng),
             c = rnd_scalar(f, rng);
      REQUIRE((a + b) + c == a + (b + c));
      REQUIRE((a * b) * c == a * (b * c));
      REQUIRE(a + b == b + a);
      REQUIRE(a * b == b * a);
      REQUIRE(a * (b + c) == a * b + a * c);
      REQUIRE(a + (-a) == zero);
      if (!a.is_zero()) {
        REQUIRE(a * a.inv() == one);
      }
      REQUIRE(a * one == a);
      REQUIRE(a + zero == a);
    }
  }
}

TEST_CASE("prime field construction contract") {
  CHECK_THROWS_AS(Field::Fp(4), Error);
  CHECK_THROWS_AS(Field::Fp(3), Error);   // p >= 5
  CHECK_THROWS_AS(Field::Fp(9), Error);
  CHECK(Field::Fp(5)->prime() == 5);
  // d must be a non-square
  const Field* f13 = Field::Fp(13);
  CHECK_THROWS_AS(Field::quad(f13, Scalar::residue(f13, 4)), Error);
  CHECK_THROWS_AS(Field::quad(Field::Q(), Scalar::rational(2)), Error);
}

TEST_CASE("quadext ops") {
  const Field* q3 = Field::quad(Field::Q(), Scalar::rational(3));
  Scalar r3 = Scalar::quad(q3, Scalar::rational(0), Scalar::rational(1));
  // sqrt3 * (1/sqrt3) = 1
  CHECK((r3 * r3.inv()).is_one());
  // (1 + sqrt3)^-1 = (-1 + sqrt3)/2
  Scalar x = Scalar::of_int(q3, 1) + r3;
  Scalar expect = Scalar::quad(q3, Scalar::rational(-1, 2), Scalar::rational(1, 2));
  CHECK(x.inv() == expect);
  CHECK(x.norm() == Scalar::rational(-2));
  CHECK(x.conj() == Scalar::quad(q3, Scalar::rational(1), Scalar::rational(-1)));

  const Field* qi = Field::quad(Field::Q(), Scalar::rational(-1));
  Scalar i = Scalar::quad(qi, Scalar::rational(0), Scalar::rational(1));
  CHECK(i * i == Scalar::of_int(qi, -1));

  CHECK_THROWS_AS(Scalar::of_int(qi, 0).inv(), Error);
}

TEST_CASE("poly_eval spec examples") {
  const Field* Q = Field::Q();
  auto node = pt(Q, {1, 1, 1, -1, -1, -1});
  CHECK(sum_u(Q).eval(node).is_zero());
  CHECK(fn_quintic(Q).eval(node).is_zero());

  const Field* f7 = Field::Fp(7);
  MultiPoly fermat = MultiPoly::zero(f7, 4);
  for (int i = 0; i < 4; ++i) {
    std::vector<uint32_t> e(4, 0);
    e[i] = 4;
    fermat = fermat + MultiPoly::monomial(f7, e, Scalar::of_int(f7, 1));
  }
  CHECK(fermat.eval(pt(f7, {1, 2, 3, 4})) == Scalar::of_int(f7, 4));
}

TEST_CASE("poly field/length mismatch errors") {
  const Field* Q = Field::Q();
  CHECK_THROWS_AS(sum_u(Q).eval(pt(Q, {1, 2})), Error);
  CHECK_THROWS_AS(sum_u(Q).eval(pt(Field::Fp(7), {1, 1, 1, 1, 1, 1})), Error);
}

TEST_CASE("gradient examples") {
  const Field* Q = Field::Q();
  auto g = sum_u(Q).gradient();
  for (const auto& gi : g) CHECK(gi == MultiPoly::constant(Q, 6, Scalar::rational(1)));

  auto node = pt(Q, {1, 1, 1, -1, -1, -1});
  // dF_N/du0 at the node equals e4(1,1,-1,-1,-1) = 1
  CHECK(fn_quintic(Q).partial(0).eval(node) == Scalar::rational(1));

  MultiPoly f = MultiPoly::monomial(Q, {2, 2, 0, 0}, Scalar::rational(1));
  MultiPoly expect = MultiPoly::monomial(Q, {1, 2, 0, 0}, Scalar::rational(2));
  CHECK(f.partial(0) == expect);
}

TEST_CASE("euler relation on random homogeneous polynomials") {
  std::mt19937_64 rng(7);
  for (const Field* f : {Field::Q(), (const Field*)Field::Fp(11)}) {
    for (int it = 0; it < 30; ++it) {
      // random homogeneous degree-4 poly in 4 vars
      std::vector<Term> ts;
      std::uniform_int_distribution<int> nd(1, 6);
      int nt = nd(rng);
      for (int t = 0; t < nt; ++t) {
        std::vector<uint32_t> e(4, 0);
        for (int k = 0; k < 4; ++k) {
          std::uniform_int_distribution<int> pos(0, 3);
          e[pos(rng)] += 1;
        }
        ts.push_back({e, rnd_scalar(f, rng)});
      }
      MultiPoly p = MultiPoly::from_terms(f, 4, ts);
      if (p.is_zero()) continue;
      REQUIRE(p.is_homogeneous());
      MultiPoly euler = MultiPoly::zero(f, 4);
      for (int i = 0; i < 4; ++i)
        euler = euler + MultiPoly::variable(f, 4, i) * p.partial(i);
      CHECK(euler == p.scaled(Scalar::of_int(f, 4)));
    }
  }
}

TEST_CASE("poly_eval mod p agrees with rational lift") {
  std::mt19937_64 rng(99);
  const Field* fp = Field::Fp(13);
  const Field* Q = Field::Q();
  for (int it = 0; it < 50; ++it) {
    std::vector<Term> ts;
    for (int t = 0; t < 5; ++t) {
      std::vector<uint32_t> e(3, 0);
      std::uniform_int_distribution<uint32_t> ed(0, 3);
      for (auto& x : e) x = ed(rng);
      std::uniform_int_distribution<long> cd(0, 12);
      ts.push_back({e, Scalar::of_int(Q, cd(rng))});
    }
    MultiPoly fq = MultiPoly::from_terms(Q, 3, ts);
    MultiPoly fp_poly = fq.lift_to(fp);
    std::uniform_int_distribution<long> xd(0, 12);
    long x0 = xd(rng), x1 = xd(rng), x2 = xd(rng);
    Scalar vq = fq.eval(pt(Q, {x0, x1, x2}));
    Scalar vp = fp_poly.eval(pt(fp, {x0, x1, x2}));
    CHECK(vq.lift_to(fp) == vp);
  }
}

TEST_CASE("canonical term order") {
  const Field* Q = Field::Q();
  // build the same poly with shuffled term insertion
  std::vector<Term> a = {{{1, 0, 2}, Scalar::rational(2)},
                         {{0, 0, 0}, Scalar::rational(-1)},
                         {{3, 0, 0}, Scalar::rational(1)},
                         {{1, 1, 1}, Scalar::rational(5)}};
  std::vector<Term> b(a.rbegin(), a.rend());
  CHECK(MultiPoly::from_terms(Q, 3, a) == MultiPoly::from_terms(Q, 3, b));
  // duplicate exponents merge, zero sums vanish
  std::vector<Term> c = {{{1, 0, 0}, Scalar::rational(2)},
                         {{1, 0, 0}, Scalar::rational(-2)}};
  CHECK(MultiPoly::from_terms(Q, 3, c).is_zero());
  // graded-lex: degree first, then lex
  MultiPoly p = MultiPoly::parse(Q, 3, 'z', "1*z2^3 + 1*z0^1*z1^1 + 1*z0^2");
  CHECK(p.terms()[0].exps == std::vector<uint32_t>{0, 0, 3});
  CHECK(p.terms()[1].exps == std::vector<uint32_t>{2, 0, 0});
  CHECK(p.terms()[2].exps == std::vector<uint32_t>{1, 1, 0});
}

TEST_CASE("printer/parser round trip") {
  std::mt19937_64 rng(1234);
  const Field* fields[] = {Field::Q(), Field::Fp(11),
                           Field::quad(Field::Q(), Scalar::rational(-1))};
  char letters[] = {'u', 'z', 'x'};
  for (int fi = 0; fi < 3; ++fi) {
    const Field* f = fields[fi];
    for (int it = 0; it < 40; ++it) {
      std::vector<Term> ts;
      std::uniform_int_distribution<int> ntd(0, 6);
      int nt = ntd(rng);
      for (int t = 0; t < nt; ++t) {
        std::vector<uint32_t> e(4, 0);
        std::uniform_int_distribution<uint32_t> ed(0, 4);
        for (auto& x : e) x = ed(rng);
        ts.push_back({e, rnd_scalar(f, rng)});
      }
      MultiPoly p = MultiPoly::from_terms(f, 4, ts);
      std::string s = p.str(letters[fi]);
      MultiPoly q = MultiPoly::parse(f, 4, letters[fi], s);
      REQUIRE(p == q);
    }
  }
  // spot checks on the exact format
  const Field* Q = Field::Q();
  MultiPoly p = MultiPoly::parse(Q, 6, 'u', "1*u0^1 - 3/2*u4^2*u5^1");
  CHECK(p.str('u') == "-3/2*u4^2*u5^1 + 1*u0^1");
  CHECK(MultiPoly::zero(Q, 6).str('u') == "0");
}

// ---------------------------------------------------------------------------
// independent elimination oracle on raw mpq_class
namespace {
struct NaiveResult {
  size_t rank;
  bool consistent;
  std::vector<mpq_class> solution;
};

NaiveResult naive_solve(std::vector<std::vector<mpq_class>> A,
                        std::vector<mpq_class> b) {
  size_t rows = A.size(), cols = A[0].size();
  std::vector<size_t> pivcol;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t s = r;
    while (s < rows && A[s][c] == 0) ++s;
    if (s == rows) continue;
    std::swap(A[s], A[r]);
    std::swap(b[s], b[r]);
    mpq_class inv = 1 / A[r][c];
    for (size_t j = 0; j < cols; ++j) A[r][j] *= inv;
    b[r] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      mpq_class f = A[i][c];
      if (f == 0) continue;
      for (size_t j = 0; j < cols; ++j) A[i][j] -= f * A[r][j];
      b[i] -= f * b[r];
    }
    pivcol.push_back(c);
    ++r;
  }
  NaiveResult out{pivcol.size(), true, {}};
  for (size_t i = r; i < rows; ++i)
    if (b[i] != 0) out.consistent = false;
  if (out.consistent) {
    out.solution.assign(cols, 0);
    for (size_t k = 0; k < pivcol.size(); ++k) out.solution[pivcol[k]] = b[k];
  }
  return out;
}
}  // namespace

TEST_CASE("solve_linear spec examples") {
  const Field* Q = Field::Q();
  Mat id = Mat::identity(Q, 3);
  std::vector<Scalar> rhs = {Scalar::rational(1), Scalar::rational(2),
                             Scalar::rational(3)};
  auto r = solve_linear(id, &rhs);
  CHECK(r.rank == 3);
  REQUIRE(r.particular.has_value());
  CHECK((*r.particular)[0] == Scalar::rational(1));
  CHECK((*r.particular)[2] == Scalar::rational(3));
  CHECK(r.kernel.empty());

  Mat zero(Q, 2, 2);
  auto rz = solve_linear(zero);
  CHECK(rz.rank == 0);
  CHECK(rz.kernel.size() == 2);
  // kernel normalization: unit vectors in ascending free-column order
  CHECK(rz.kernel[0][0].is_one());
  CHECK(rz.kernel[1][1].is_one());

  // inconsistent: reported, not thrown
  Mat m(Q, 2, 1);
  m.at(0, 0) = Scalar::rational(1);
  m.at(1, 0) = Scalar::rational(1);
  std::vector<Scalar> bad = {Scalar::rational(0), Scalar::rational(1)};
  auto ri = solve_linear(m, &bad);
  CHECK_FALSE(ri.consistent);
  CHECK_FALSE(ri.particular.has_value());
}

TEST_CASE("solve_linear agrees with naive elimination oracle") {
  std::mt19937_64 rng(2024);
  const Field* Q = Field::Q();
  std::uniform_int_distribution<long> d(-5, 5);
  for (int it = 0; it < 40; ++it) {
    size_t n = 6;
    std::vector<std::vector<mpq_class>> A(n, std::vector<mpq_class>(n));
    std::vector<mpq_class> b(n);
    Mat m(Q, n, n);
    std::vector<Scalar> rhs;
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        long v = d(rng);
        if (it % 3 == 0 && j > 3) v = 0;  // force some rank deficiency
        A[i][j] = v;
        m.at(i, j) = Scalar::rational(v);
      }
      long bv = d(rng);
      b[i] = bv;
      rhs.push_back(Scalar::rational(bv));
    }
    auto mine = solve_linear(m, &rhs);
    auto oracle = naive_solve(A, b);
    REQUIRE(mine.rank == oracle.rank);
    REQUIRE(mine.consistent == oracle.consistent);
    REQUIRE(mine.kernel.size() == n - oracle.rank);
    if (mine.consistent) {
      // verify the particular solution against the raw system
      for (size_t i = 0; i < n; ++i) {
        mpq_class acc = 0;
        for (size_t j = 0; j < n; ++j)
          acc += A[i][j] * (*mine.particular)[j].rat();
        REQUIRE(acc == b[i]);
      }
    }
    for (const auto& k : mine.kernel)
      for (size_t i = 0; i < n; ++i) {
        mpq_class acc = 0;
        for (size_t j = 0; j < n; ++j) acc += A[i][j] * k[j].rat();
        REQUIRE(acc == 0);
      }
  }
}

TEST_CASE("matrix helpers") {
  const Field* Q = Field::Q();
  Mat m(Q, 2, 2);
  m.at(0, 0) = Scalar::rational(2);
  m.at(0, 1) = Scalar::rational(1);
  m.at(1, 0) = Scalar::rational(1);
  m.at(1, 1) = Scalar::rational(1);
  CHECK(determinant(m) == Scalar::rational(1));
  Mat mi = inverse(m);
  CHECK(m * mi == Mat::identity(Q, 2));
  CHECK(rank_of(m) == 2);
}

TEST_CASE("scalar text round trip") {
  const Field* qi = Field::quad(Field::Q(), Scalar::rational(-1));
  Scalar s = Scalar::quad(qi, Scalar::rational(-1, 2), Scalar::rational(3, 4));
  CHECK(Scalar::parse(qi, s.str()) == s);
  CHECK(s.str() == "(-1/2+3/4*i)");
  const Field* f11 = Field::Fp(11);
  CHECK(Scalar::parse(f11, "10").res() == 10);
  CHECK(Scalar::rational(-6, -4).str() == "3/2");
}
