#include <hq/quartics.hpp>

#include <algorithm>

namespace hq {

static MultiPoly mono4(const Field* f, std::vector<uint32_t> e, long c = 1) {
  return MultiPoly::monomial(f, std::move(e), Scalar::of_int(f, c));
}

std::vector<MultiPoly> q_basis(const Field* f) {
  MultiPoly q0 = mono4(f, {4, 0, 0, 0}) + mono4(f, {0, 4, 0, 0}) +
                 mono4(f, {0, 0, 4, 0}) + mono4(f, {0, 0, 0, 4});
  MultiPoly q1 = mono4(f, {2, 2, 0, 0}) + mono4(f, {0, 0, 2, 2});
  MultiPoly q2 = mono4(f, {2, 0, 2, 0}) + mono4(f, {0, 2, 0, 2});
  MultiPoly q3 = mono4(f, {2, 0, 0, 2}) + mono4(f, {0, 2, 2, 0});
  MultiPoly q4 = mono4(f, {1, 1, 1, 1});
  return {q0, q1, q2, q3, q4};
}

MultiPoly QuarticCoeffs::to_poly() const {
  const Field* f = field();
  auto qs = q_basis(f);
  MultiPoly out = MultiPoly::zero(f, 4);
  for (int i = 0; i < 5; ++i) out = out + qs[i].scaled(c[i]);
  return out;
}

QuarticCoeffs QuarticCoeffs::normalized() const {
  int nz = -1;
  for (int i = 0; i < 5; ++i)
    if (!c[i].is_zero()) {
      nz = i;
      break;
    }
  if (nz < 0) throw Error("zero coefficient vector");
  Scalar s = c[nz].inv();
  QuarticCoeffs out = *this;
  for (auto& x : out.c) x = x * s;
  return out;
}

bool QuarticCoeffs::proportional_to(const QuarticCoeffs& o) const {
  return normalized().c == o.normalized().c;
}

std::string QuarticCoeffs::str() const {
  std::string s = "(";
  for (int i = 0; i < 5; ++i) {
    if (i) s += ":";
    s += c[i].str();
  }
  return s + ")";
}

QuarticCoeffs coeffs_of_invariant(const MultiPoly& f) {
  if (f.nvars() != 4) throw Error("expected a surface in P^3");
  const Field* fd = f.field();
  auto qs = q_basis(fd);
  // the five basis leading monomials are disjoint, so read coefficients off
  std::array<Scalar, 5> c = {f.coeff_of({4, 0, 0, 0}), f.coeff_of({2, 2, 0, 0}),
                             f.coeff_of({2, 0, 2, 0}), f.coeff_of({2, 0, 0, 2}),
                             f.coeff_of({1, 1, 1, 1})};
  MultiPoly rec = MultiPoly::zero(fd, 4);
  for (int i = 0; i < 5; ++i) rec = rec + qs[i].scaled(c[i]);
  if (!(rec == f)) throw Error("polynomial is not in the invariant span");
  return QuarticCoeffs{c};
}

Desmic desmic_quartic(const Scalar& C, const Scalar& D) {
  const Field* f = C.field();
  if (D.field() != f) throw Error("field mismatch");
  if (C.is_zero() && D.is_zero()) throw Error("(C,D) must be nonzero");
  auto sq = [&](int i) {
    std::vector<uint32_t> e(4, 0);
    e[i] = 2;
    return mono4(f, e);
  };
  MultiPoly t1 = (sq(0) - sq(3)) * (sq(1) - sq(2));
  MultiPoly t2 = (sq(0) - sq(2)) * (sq(3) - sq(1));
  MultiPoly poly = t1.scaled(C) + t2.scaled(D);
  Scalar z = Scalar::of_int(f, 0);
  QuarticCoeffs coeffs{std::array<Scalar, 5>{z, C - D, -C, D, z}};
  if (!poly.is_zero() && !(coeffs.to_poly() == poly))
    throw Error("desmic expansion mismatch");
  return {coeffs, poly};
}

DesmicNodes desmic_nodes(const Field* f) {
  DesmicNodes out;
  for (int i = 0; i < 4; ++i) {
    std::vector<Scalar> v(4, Scalar::of_int(f, 0));
    v[i] = Scalar::of_int(f, 1);
    out.poles.push_back(ProjPoint::of(v));
  }
  for (int m = 0; m < 8; ++m) {  // first coordinate +1, signs on the rest
    std::vector<Scalar> v{Scalar::of_int(f, 1)};
    int minus = 0;
    for (int i = 0; i < 3; ++i) {
      int s = (m >> i) & 1 ? -1 : 1;
      if (s < 0) ++minus;
      v.push_back(Scalar::of_int(f, s));
    }
    (minus % 2 == 0 ? out.even : out.odd).push_back(ProjPoint::of(v));
  }
  return out;
}

std::vector<PluckerLine> desmic_lines(const Field* f) {
  std::vector<PluckerLine> out;
  for (int i = 0; i < 4; ++i) {
    // z_i free; the three other coordinates are fixed signs (first one +1,
    // the global flip being projective)
    std::vector<int> rest;
    for (int j = 0; j < 4; ++j)
      if (j != i) rest.push_back(j);
    for (int m = 0; m < 4; ++m) {
      std::vector<Scalar> p(4, Scalar::of_int(f, 0));
      p[rest[0]] = Scalar::of_int(f, 1);
      p[rest[1]] = Scalar::of_int(f, (m & 1) ? -1 : 1);
      p[rest[2]] = Scalar::of_int(f, (m & 2) ? -1 : 1);
      std::vector<Scalar> q(4, Scalar::of_int(f, 0));
      q[i] = Scalar::of_int(f, 1);
      out.push_back(plucker_of_line(ProjPoint::of(p), ProjPoint::of(q)));
    }
  }
  return out;
}

std::vector<std::vector<uint32_t>> singular_points(const MultiPoly& f,
                                                   uint64_t q) {
  if (f.nvars() != 4) throw Error("expected a surface in P^3");
  if (!f.is_homogeneous() || f.total_degree() < 2)
    throw Error("expected a homogeneous form of degree >= 2");
  FqCtx C(q);
  FqPoly fp = FqPoly::compile(C, f);
  std::array<FqPoly, 4> dfp;
  for (int i = 0; i < 4; ++i) dfp[i] = FqPoly::compile(C, f.partial(i));
  std::vector<std::vector<uint32_t>> out;
  fq_enumerate_points(C, 3, [&](const uint32_t* x) {
    for (int i = 0; i < 4; ++i)
      if (dfp[i].eval(C, x) != 0) return;
    if (fp.eval(C, x) != 0) return;  // p | deg can decouple f from grad f
    out.push_back(std::vector<uint32_t>(x, x + 4));
  });
  return out;
}

LinesCensus lines_census(const MultiPoly& f, uint64_t q) {
  if (f.nvars() != 4) throw Error("expected a surface in P^3");
  if (!f.is_homogeneous() || f.is_zero()) throw Error("bad census input");
  FqCtx C(q);
  FqPoly fp = FqPoly::compile(C, f);
  LinesCensus out;
  out.q = q;
  out.lines = fq_lines_on_surface(C, fp);
  return out;
}

QuarticThroughLine quartic_through_line(const PluckerLine& l) {
  const Field* f = l.a.field();
  // restrict z_i -> a_i s + b_i t and expand on the q-basis
  std::vector<MultiPoly> images;
  for (int i = 0; i < 4; ++i) {
    MultiPoly im = MultiPoly::variable(f, 2, 0).scaled(l.a.c[i]) +
                   MultiPoly::variable(f, 2, 1).scaled(l.b.c[i]);
    images.push_back(im);
  }
  Mat sys(f, 5, 5);  // rows: s^4, s^3 t, ..., t^4; cols: q0..q4
  auto qs = q_basis(f);
  for (int k = 0; k < 5; ++k) {
    MultiPoly r = qs[k].substitute(images);
    for (int m = 0; m <= 4; ++m)
      sys.at(m, k) = r.coeff_of({(uint32_t)(4 - m), (uint32_t)m});
  }
  LinSolve ls = solve_linear(sys);
  QuarticThroughLine out;
  out.kernel_dim = ls.kernel.size();
  if (ls.kernel.empty()) {
    out.kind = QuarticThroughLine::none;
  } else if (ls.kernel.size() == 1) {
    out.kind = QuarticThroughLine::unique;
    std::array<Scalar, 5> c{ls.kernel[0][0], ls.kernel[0][1], ls.kernel[0][2],
                            ls.kernel[0][3], ls.kernel[0][4]};
    out.coeffs = QuarticCoeffs{c}.normalized();
  } else {
    out.kind = QuarticThroughLine::non_unique;
  }
  return out;
}

static bool point_on_line(const PluckerLine& l, const ProjPoint& p) {
  Mat m = Mat::from_rows(p.field(), {l.a.c, l.b.c, p.c});
  return rank_of(m) == 2;
}

std::vector<ReyeRow> reye_incidence(const Scalar& C, const Scalar& D) {
  const Field* f = C.field();
  if (C.is_zero() || D.is_zero() || (C - D).is_zero())
    throw Error("CD(C-D) != 0 required");
  DesmicNodes nodes = desmic_nodes(f);
  // the 12 points really are singular on this member
  Desmic dq = desmic_quartic(C, D);
  auto grad = dq.poly.gradient();
  auto check_node = [&](const ProjPoint& p) {
    for (const auto& g : grad)
      if (!g.eval(p.c).is_zero()) throw Error("expected singular point");
  };
  for (const auto& p : nodes.poles) check_node(p);
  for (const auto& p : nodes.even) check_node(p);
  for (const auto& p : nodes.odd) check_node(p);

  std::vector<ReyeRow> rows;
  for (const auto& l : desmic_lines(f)) {
    std::vector<const ProjPoint*> pole, even, odd;
    for (const auto& p : nodes.poles)
      if (point_on_line(l, p)) pole.push_back(&p);
    for (const auto& p : nodes.even)
      if (point_on_line(l, p)) even.push_back(&p);
    for (const auto& p : nodes.odd)
      if (point_on_line(l, p)) odd.push_back(&p);
    if (pole.size() != 1 || even.size() != 1 || odd.size() != 1)
      throw Error("line fails the one-pole one-even one-odd incidence");
    rows.push_back(ReyeRow{l, *pole[0], *even[0], *odd[0]});
  }
  return rows;
}

std::optional<MultiPoly> is_fundamental_square(const QuarticCoeffs& f) {
  const Field* fd = f.field();
  MultiPoly p = f.to_poly();
  if (p.is_zero()) throw Error("zero quartic");
  for (const auto& line : character_eigenlines(fd)) {
    MultiPoly sq = line.quadric * line.quadric;
    // proportionality via cross-multiplied leading coefficients
    Scalar a = sq.terms()[0].coeff, b = p.coeff_of(sq.terms()[0].exps);
    if (b.is_zero()) continue;
    if (sq.scaled(b) == p.scaled(a)) return line.quadric;
  }
  return std::nullopt;
}

bool fae_generic(const Scalar& B, const Scalar& C, const Scalar& D) {
  if (B.is_zero() || C.is_zero() || D.is_zero()) return false;
  for (int s1 : {1, -1})
    for (int s2 : {1, -1}) {
      Scalar t = B + (s1 > 0 ? C : -C) + (s2 > 0 ? D : -D);
      if (t.is_zero()) return false;
    }
  return true;
}

}  // namespace hq
