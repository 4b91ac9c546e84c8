#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <hq/dictionary.hpp>
#include <hq/heisenberg.hpp>
#include <hq/quintic.hpp>

#include <iostream>
#include <random>
#include <set>

#include "doctest.h"

using namespace hq;

namespace {

const Field* Q = Field::Q();

PluckerLine random_rational_line(std::mt19937_64& rng) {
  for (;;) {
    std::vector<Scalar> a, b;
    for (int i = 0; i < 4; ++i) {
      a.push_back(Scalar::rational((long)(rng() % 19) - 9));
      b.push_back(Scalar::rational((long)(rng() % 19) - 9));
    }
    bool za = true, zb = true;
    for (int i = 0; i < 4; ++i) {
      za = za && a[i].is_zero();
      zb = zb && b[i].is_zero();
    }
    if (za || zb) continue;
    if (rank_of(Mat::from_rows(Q, {a, b})) != 2) continue;
    return plucker_of_line(ProjPoint::of(a), ProjPoint::of(b));
  }
}

ProjPoint pt6(std::initializer_list<long> v) {
  std::vector<Scalar> c;
  for (long x : v) c.push_back(Scalar::rational(x));
  return ProjPoint::of(c);
}

QuarticCoeffs co5(std::initializer_list<long> v) {
  std::array<Scalar, 5> c;
  size_t i = 0;
  for (long x : v) c[i++] = Scalar::rational(x);
  return QuarticCoeffs{c};
}

const DictMap& fitted() {
  static const DictMap d = [] {
    std::vector<DictSample> S;
    for (uint64_t p : {11, 13, 17}) {
      auto g = gather_samples(p, 12, 1);
      S.insert(S.end(), g.begin(), g.end());
    }
    return fit_dictionary(S, {11, 13, 17});
  }();
  return d;
}

}  // namespace

TEST_CASE("plucker form diagonalizes in the wedge eigenbasis") {
  auto c = plucker_form_diagonal();
  REQUIRE(c.size() == 6);
  const long num[6] = {1, -1, 1, -1, -1, 1};
  for (int i = 0; i < 6; ++i) CHECK(c[i] == Scalar::rational(num[i], 4));
}

TEST_CASE("u of a line: sum always zero, on the quintic only for moduli lines") {
  std::mt19937_64 rng(7);
  int off_n = 0;
  for (int t = 0; t < 10; ++t) {
    PluckerLine l = random_rational_line(rng);
    std::vector<Scalar> u = line_to_u_eigen(l);
    Scalar s = Scalar::of_int(Q, 0);
    for (const auto& x : u) s += x;
    CHECK(s.is_zero());
    if (!n_membership(ProjPoint::of(u)).on_n) ++off_n;
  }
  // the orbit construction fills the hyperplane, so small-height lines can
  // land on the quintic by accident, but generically they do not
  CHECK(off_n >= 8);
  // gathered samples are exactly the on-quintic ones
  for (const DictSample& s : gather_samples(11, 5, 3)) {
    std::vector<Scalar> u = line_to_u_eigen(s.line);
    Scalar sum = Scalar::of_int(u[0].field(), 0);
    for (const auto& x : u) sum += x;
    CHECK(sum.is_zero());
    CHECK(n_membership(ProjPoint::of(u)).on_n);
  }
}

TEST_CASE("gather_samples is deterministic, unique, and census-clean") {
  auto a = gather_samples(11, 10, 5);
  auto b = gather_samples(11, 10, 5);
  REQUIRE(a.size() == 10);
  std::set<std::string> seen;
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].line == b[i].line);
    CHECK(a[i].coeffs.proportional_to(b[i].coeffs));
    CHECK(a[i].line.pl[0].field()->prime() == 11);
    size_t cen = singular_points(a[i].coeffs.to_poly(), 11).size();
    CHECK((cen == 0 || cen == 4));
    seen.insert(a[i].line.str());
  }
  CHECK(seen.size() == 10);
}

TEST_CASE("fit_dictionary: anchor, gauge, rank, cross-prime stability") {
  const DictMap& d = fitted();
  std::cout << "[empirics] fitted map\n" << d.str();

  // the full matrix, pinned: twelve times it is integral
  static const long T[5][6] = {{1, 1, 1, 1, -2, -2},
                               {-6, -6, 6, 6, 0, 0},
                               {-6, 6, -6, 6, 0, 0},
                               {-6, 6, 6, -6, 0, 0},
                               {0, 0, 0, 0, -24, 24}};
  for (size_t r = 0; r < 5; ++r)
    for (size_t k = 0; k < 6; ++k)
      CHECK(d.L.at(r, k) == Scalar::rational(T[r][k], 12));
  // gauge and rank
  for (size_t r = 0; r < 5; ++r) {
    Scalar s = Scalar::of_int(Q, 0);
    for (size_t k = 0; k < 6; ++k) s += d.L.at(r, k);
    CHECK(s.is_zero());
  }
  CHECK(rank_of(d.L) == 5);
  // labeling is the identity: the eigenbasis order is already the
  // coordinate order the map expects
  for (int k = 0; k < 6; ++k) CHECK(d.labeling[k] == k);

  // a disjoint prime set reconstructs the same matrix
  std::vector<DictSample> S2;
  for (uint64_t p : {19, 23}) {
    auto g = gather_samples(p, 16, 9);
    S2.insert(S2.end(), g.begin(), g.end());
  }
  DictMap d2 = fit_dictionary(S2, {19, 23});
  CHECK(d2.L == d.L);
  CHECK(d2.labeling == d.labeling);
}

TEST_CASE("apply_dictionary: the ten nodes hit the ten squares bijectively") {
  const DictMap& d = fitted();
  PlaneFamilies fam = plane_families();
  REQUIRE(fam.nodes.size() == 10);
  std::set<std::string> images;
  for (const ProjPoint& n : fam.nodes) {
    QuarticCoeffs img = apply_dictionary(d, n);
    CHECK(is_fundamental_square(img).has_value());
    images.insert(img.normalized().str());
  }
  CHECK(images.size() == 10);

  // the full correspondence, fixed by the tie-break convention
  struct Row {
    std::initializer_list<long> node, img;
  };
  static const Row table[] = {
      {{1, 1, 1, -1, -1, -1}, {1, -2, -2, 2, 0}},
      {{1, 1, -1, 1, -1, -1}, {1, -2, 2, -2, 0}},
      {{1, 1, -1, -1, 1, -1}, {0, 1, 0, 0, 2}},
      {{1, 1, -1, -1, -1, 1}, {0, 1, 0, 0, -2}},
      {{1, -1, 1, 1, -1, -1}, {1, 2, -2, -2, 0}},
      {{1, -1, 1, -1, 1, -1}, {0, 0, 1, 0, 2}},
      {{1, -1, 1, -1, -1, 1}, {0, 0, 1, 0, -2}},
      {{1, -1, -1, 1, 1, -1}, {0, 0, 0, 1, 2}},
      {{1, -1, -1, 1, -1, 1}, {0, 0, 0, 1, -2}},
      {{1, -1, -1, -1, 1, 1}, {1, 2, 2, 2, 0}},
  };
  for (const Row& row : table)
    CHECK(apply_dictionary(d, pt6(row.node)).proportional_to(co5(row.img)));
}

TEST_CASE("moduli_point inverts apply_dictionary") {
  const DictMap& d = fitted();
  std::mt19937_64 rng(11);
  for (int t = 0; t < 8; ++t) {
    std::vector<Scalar> u(6, Scalar::rational(0));
    Scalar s = Scalar::rational(0);
    for (int k = 0; k < 5; ++k) {
      u[k] = Scalar::rational((long)(rng() % 21) - 10);
      s += u[k];
    }
    u[5] = -s;
    bool zero = true;
    for (const auto& x : u) zero = zero && x.is_zero();
    if (zero) continue;
    ProjPoint pu = ProjPoint::of(u);
    CHECK(moduli_point(d, apply_dictionary(d, pu)).str() == pu.str());
  }
  for (int t = 0; t < 8; ++t) {
    std::array<Scalar, 5> c;
    for (auto& x : c) x = Scalar::rational((long)(rng() % 21) - 10);
    QuarticCoeffs q{c};
    bool zero = true;
    for (const auto& x : q.c) zero = zero && x.is_zero();
    if (zero) continue;
    CHECK(apply_dictionary(d, moduli_point(d, q)).proportional_to(q));
  }
}

TEST_CASE("class point vs orbit point: the two maps differ on every sample") {
  const DictMap& d = fitted();
  auto samples = gather_samples(13, 20, 1);
  int smooth = 0, nodal = 0;
  for (const DictSample& s : samples) {
    ProjPoint us = moduli_point(d, s.coeffs);
    ProjPoint ul = ProjPoint::of(line_to_u_eigen(s.line));
    CHECK(n_membership(us).on_n);
    CHECK(us.str() != ul.str());
    size_t cen = singular_points(s.coeffs.to_poly(), 13).size();
    int z = 0;
    for (const auto& x : us.c) z += x.is_zero();
    // smooth stratum: interior class point, skew orbit; 4-nodal stratum:
    // class point on two walls, non-skew orbit
    if (cen == 0) {
      ++smooth;
      CHECK(z == 0);
      CHECK(heis_orbit_skew(s.line));
    } else {
      REQUIRE(cen == 4);
      ++nodal;
      CHECK(z == 2);
      CHECK(!heis_orbit_skew(s.line));
    }
  }
  std::cout << "[empirics] p=13 holdout: " << smooth << " smooth, " << nodal
            << " 4-nodal\n";
  CHECK(smooth >= 3);
  CHECK(nodal >= 3);
}

TEST_CASE("apply_dictionary rejects bad input") {
  const DictMap& d = fitted();
  std::vector<Scalar> v(6, Scalar::rational(0));
  v[0] = Scalar::rational(1);
  CHECK_THROWS_AS(apply_dictionary(d, ProjPoint::of(v)), Error);
  std::vector<Scalar> w{Scalar::rational(1), Scalar::rational(-1)};
  CHECK_THROWS_AS(apply_dictionary(d, ProjPoint::of(w)), Error);
}

TEST_CASE("desmic pencil lines: one shared node, members on the D-line") {
  const DictMap& d = fitted();
  Desmic dm = desmic_quartic(Scalar::rational(2), Scalar::rational(7));
  auto lines = desmic_lines(Q);
  CHECK(lines.size() == 16);
  std::set<std::string> upoints;
  for (const PluckerLine& l : lines) {
    CHECK(quartic_through_line(l).kind == QuarticThroughLine::non_unique);
    CHECK(line_in_hypersurface(l, dm.coeffs.to_poly()));
    ProjPoint u = ProjPoint::of(d.line_to_u(l));
    CHECK(n_membership(u).on_n);
    upoints.insert(u.str());
  }
  // all sixteen base lines share one orbit point, a node; its image is the
  // squared fundamental quadric, not a pencil member
  CHECK(upoints.size() == 1);
  CHECK(*upoints.begin() == pt6({1, -1, 1, -1, -1, 1}).str());
  QuarticCoeffs img = apply_dictionary(d, pt6({1, -1, 1, -1, -1, 1}));
  CHECK(is_fundamental_square(img).has_value());
  CHECK(img.proportional_to(co5({0, 0, 1, 0, -2})));

  // generic members pull back to the D-line u0 = u4 = u5 = 0
  for (auto [cc, dd] : {std::pair{1, 3}, {2, 7}, {5, -2}}) {
    Desmic m = desmic_quartic(Scalar::rational(cc), Scalar::rational(dd));
    ProjPoint um = moduli_point(d, m.coeffs);
    CHECK(um.str() == pt6({0, dd - cc, cc, -dd, 0, 0}).str());
    CHECK(n_membership(um).on_n);
  }
}

TEST_CASE("validate_dictionary is green over {11,13}") {
  DictReport rep = validate_dictionary(fitted(), {11, 13});
  std::set<std::string> ids;
  for (const DictCheck& c : rep.checks) {
    CAPTURE(c.id);
    CAPTURE(c.observed);
    CHECK(c.ok);
    ids.insert(c.id);
  }
  CHECK(rep.all_ok());
  for (const char* want :
       {"nodes.squares@Q", "nodes.squares@11", "nodes.squares@13",
        "vplane.f45@11", "vplane.f45@13", "vplane.census@11",
        "vplane.census@13", "splane.line@11", "splane.line@13", "holdout@11",
        "holdout@13", "vplane.spans", "dline.pencil", "desmic.lines"})
    CHECK(ids.count(want) == 1);
}

TEST_CASE("serialization round-trips") {
  const DictMap& d = fitted();
  DictMap e = DictMap::parse(d.str());
  CHECK(e.L == d.L);
  CHECK(e.labeling == d.labeling);
  CHECK(e.str() == d.str());
  CHECK_THROWS_AS(DictMap::parse("dictionary labeling 0 0 1 2 3 4"), Error);
  CHECK_THROWS_AS(DictMap::parse("nonsense"), Error);
}

TEST_CASE("degenerate fits fail loudly") {
  // too few samples / too few primes / uncovered prime
  std::vector<DictSample> few = gather_samples(11, 5, 4);
  CHECK_THROWS_AS(fit_dictionary(few, {11, 13}), Error);
  std::vector<DictSample> one_prime = gather_samples(11, 30, 4);
  CHECK_THROWS_AS(fit_dictionary(one_prime, {11}), Error);
  try {
    fit_dictionary(one_prime, {11, 13});
    FAIL("expected a coverage error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("no samples over F_13") !=
          std::string::npos);
  }
  CHECK_THROWS_AS(fit_dictionary(one_prime, {3, 11}), Error);

  // a corrupted sample is exposed by the pullback stage: its class point
  // leaves the quintic
  std::vector<DictSample> bad;
  for (uint64_t p : {11, 13}) {
    auto g = gather_samples(p, 16, 6);
    bad.insert(bad.end(), g.begin(), g.end());
  }
  const Field* f11 = bad[0].coeffs.field();
  std::array<Scalar, 5> junk;
  for (int i = 0; i < 5; ++i) junk[i] = Scalar::of_int(f11, 1 + i);
  bad[0].coeffs = QuarticCoeffs{junk};
  try {
    fit_dictionary(bad, {11, 13});
    FAIL("expected a pullback witness");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("off the quintic") != std::string::npos);
  }
}
