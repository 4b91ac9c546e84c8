#include <hq/projective.hpp>

namespace hq {

static std::vector<Scalar> normalize_proj(std::vector<Scalar> v) {
  int nz = -1;
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) {
      nz = (int)i;
      break;
    }
  if (nz < 0) throw Error("zero vector is not a projective point");
  Scalar s = v[nz].inv();
  for (auto& x : v) x = x * s;
  return v;
}

ProjPoint ProjPoint::of(std::vector<Scalar> v) {
  if (v.empty()) throw Error("empty coordinate vector");
  return ProjPoint{normalize_proj(std::move(v))};
}

std::string ProjPoint::str() const {
  std::string s = "(";
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) s += ":";
    s += c[i].str();
  }
  return s + ")";
}

std::string PluckerLine::str() const {
  std::string s = "[";
  for (size_t i = 0; i < pl.size(); ++i) {
    if (i) s += ",";
    s += pl[i].str();
  }
  return s + "]";
}

static const int PAIRS[6][2] = {{0, 1}, {0, 2}, {0, 3}, {2, 3}, {3, 1}, {1, 2}};

std::vector<Scalar> plucker_minors(const std::vector<Scalar>& a,
                                   const std::vector<Scalar>& b) {
  if (a.size() != 4 || b.size() != 4) throw Error("plucker needs P^3 points");
  std::vector<Scalar> p;
  p.reserve(6);
  for (const auto& ij : PAIRS)
    p.push_back(a[ij[0]] * b[ij[1]] - a[ij[1]] * b[ij[0]]);
  return p;
}

PluckerLine plucker_of_line(const ProjPoint& p, const ProjPoint& q) {
  if (p.c.size() != 4 || q.c.size() != 4) throw Error("line needs P^3 points");
  if (p.field() != q.field()) throw Error("field mismatch");
  if (p == q) throw Error("coincident points span no line");
  Mat span = Mat::from_rows(p.field(), {p.c, q.c});
  rref(span);
  std::vector<Scalar> r0(span.a.begin(), span.a.begin() + 4);
  std::vector<Scalar> r1(span.a.begin() + 4, span.a.begin() + 8);
  PluckerLine l;
  l.a = ProjPoint::of(r0);
  l.b = ProjPoint::of(r1);
  l.pl = normalize_proj(plucker_minors(l.a.c, l.b.c));
  // Plucker relation p01 p23 + p02 p31 + p03 p12 = 0
  Scalar rel = l.pl[0] * l.pl[3] + l.pl[1] * l.pl[4] + l.pl[2] * l.pl[5];
  if (!rel.is_zero()) throw Error("plucker relation violated");
  return l;
}

std::vector<Scalar> field_elements(const Field* f) {
  if (f->is_rational()) throw Error("field is infinite");
  std::vector<Scalar> out;
  if (f->is_prime()) {
    for (uint64_t i = 0; i < f->prime(); ++i) out.push_back(Scalar::residue(f, i));
    return out;
  }
  const Field* base = f->base();
  if (base->is_rational()) throw Error("field is infinite");
  for (uint64_t a = 0; a < base->prime(); ++a)
    for (uint64_t b = 0; b < base->prime(); ++b)
      out.push_back(Scalar::quad(f, Scalar::residue(base, a), Scalar::residue(base, b)));
  return out;
}

std::vector<ProjPoint> enumerate_proj_points(const Field* f, int n) {
  if (n < 0) throw Error("negative dimension");
  std::vector<Scalar> elems = field_elements(f);
  Scalar z = Scalar::of_int(f, 0), o = Scalar::of_int(f, 1);
  std::vector<ProjPoint> out;
  for (int lead = n; lead >= 0; --lead) {
    std::vector<size_t> idx((size_t)(n - lead), 0);
    for (;;) {
      std::vector<Scalar> c((size_t)n + 1, z);
      c[lead] = o;
      for (int i = 0; i < n - lead; ++i) c[lead + 1 + i] = elems[idx[i]];
      out.push_back(ProjPoint{std::move(c)});
      int i = n - lead - 1;
      for (; i >= 0; --i) {
        if (++idx[i] < elems.size()) break;
        idx[i] = 0;
      }
      if (i < 0) break;
    }
  }
  return out;
}

std::vector<PluckerLine> enumerate_lines_p3(const Field* f) {
  std::vector<Scalar> el = field_elements(f);
  Scalar z = Scalar::of_int(f, 0), o = Scalar::of_int(f, 1);
  std::vector<PluckerLine> out;
  auto emit = [&](std::vector<Scalar> r0, std::vector<Scalar> r1) {
    PluckerLine l;
    l.a = ProjPoint{std::move(r0)};  // cells are already RREF + normalized
    l.b = ProjPoint{std::move(r1)};
    l.pl = normalize_proj(plucker_minors(l.a.c, l.b.c));
    out.push_back(std::move(l));
  };
  for (const auto& s : el)
    for (const auto& t : el)
      for (const auto& u : el)
        for (const auto& v : el) emit({o, z, s, t}, {z, o, u, v});
  for (const auto& s : el)
    for (const auto& t : el)
      for (const auto& u : el) emit({o, s, z, t}, {z, z, o, u});
  for (const auto& s : el)
    for (const auto& t : el) emit({o, s, t, z}, {z, z, z, o});
  for (const auto& s : el)
    for (const auto& t : el) emit({z, o, z, s}, {z, z, o, t});
  for (const auto& s : el) emit({z, o, s, z}, {z, z, z, o});
  emit({z, z, o, z}, {z, z, z, o});
  return out;
}

bool line_in_hypersurface(const PluckerLine& l, const MultiPoly& f) {
  if (f.nvars() != 4) throw Error("hypersurface must live in P^3");
  if (f.is_zero()) throw Error("zero polynomial rejected");
  if (!f.is_homogeneous()) throw Error("non-homogeneous polynomial");
  int d = f.total_degree();
  if (d < 1) throw Error("constant polynomial rejected");
  const Field* fd = f.field();
  if (l.a.field() != fd) throw Error("field mismatch");
  // evaluate at b (parameter infinity) and at a + t*b for d distinct t
  if (!f.eval(l.b.c).is_zero()) return false;
  std::vector<Scalar> params;
  if (!fd->finite()) {
    for (int k = 0; k < d; ++k) params.push_back(Scalar::of_int(fd, k));
  } else {
    std::vector<Scalar> el = field_elements(fd);
    if ((int)el.size() < d) throw Error("field too small for degree");
    params.assign(el.begin(), el.begin() + d);
  }
  for (const auto& t : params) {
    std::vector<Scalar> pt;
    pt.reserve(4);
    for (int i = 0; i < 4; ++i) pt.push_back(l.a.c[i] + t * l.b.c[i]);
    if (!f.eval(pt).is_zero()) return false;
  }
  return true;
}

Mat wedge_matrix(const Mat& g) {
  if (g.rows != 4 || g.cols != 4) throw Error("wedge_matrix expects 4x4");
  Mat w(g.field, 6, 6);
  for (int r = 0; r < 6; ++r) {
    int i = PAIRS[r][0], j = PAIRS[r][1];
    for (int c = 0; c < 6; ++c) {
      int k = PAIRS[c][0], l = PAIRS[c][1];
      w.at(r, c) = g.at(i, k) * g.at(j, l) - g.at(i, l) * g.at(j, k);
    }
  }
  return w;
}

}  // namespace hq
