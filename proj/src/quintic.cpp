#include <hq/quintic.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace hq {

MultiPoly sum_u(const Field* f) {
  MultiPoly s = MultiPoly::zero(f, 6);
  for (int i = 0; i < 6; ++i) s = s + MultiPoly::variable(f, 6, i);
  return s;
}

MultiPoly nieto_quintic(const Field* f) {
  MultiPoly s = MultiPoly::zero(f, 6);
  for (int i = 0; i < 6; ++i) {
    std::vector<uint32_t> e(6, 1);
    e[i] = 0;
    s = s + MultiPoly::monomial(f, e, Scalar::of_int(f, 1));
  }
  return s;
}

NMembership n_membership(const ProjPoint& u) {
  if (u.c.size() != 6) throw Error("N lives in P^5");
  const Field* f = u.field();
  Scalar s = sum_u(f).eval(u.c);
  Scalar fn = nieto_quintic(f).eval(u.c);
  return {s.is_zero() && fn.is_zero(), s, fn};
}

bool m_membership(const ProjPoint& x) {
  if (x.c.size() != 6) throw Error("M lives in P^5");
  const Field* f = x.field();
  std::vector<Scalar> sq;
  for (const auto& c : x.c) sq.push_back(c * c);
  Scalar s = Scalar::of_int(f, 0);
  for (const auto& c : sq) s += c;
  return s.is_zero() && nieto_quintic(f).eval(sq).is_zero();
}

int jacobian_rank_on_N(const ProjPoint& u) {
  NMembership m = n_membership(u);
  if (!m.on_n) throw Error("point is not on N");
  const Field* f = u.field();
  Mat j(f, 2, 6);
  MultiPoly fn = nieto_quintic(f);
  for (int i = 0; i < 6; ++i) {
    j.at(0, i) = Scalar::of_int(f, 1);
    j.at(1, i) = fn.partial(i).eval(u.c);
  }
  return (int)rank_of(j);
}

std::vector<MultiPoly> s_plane_images(const Field* f,
                                      const std::array<int, 6>& pairing) {
  std::vector<MultiPoly> im(6, MultiPoly::zero(f, 3));
  for (int k = 0; k < 3; ++k) {
    im[pairing[2 * k]] = MultiPoly::variable(f, 3, k);
    im[pairing[2 * k + 1]] = -MultiPoly::variable(f, 3, k);
  }
  return im;
}

std::vector<MultiPoly> v_plane_images(const Field* f,
                                      const std::array<int, 2>& pair) {
  std::vector<MultiPoly> im(6, MultiPoly::zero(f, 3));
  std::vector<int> rest;
  for (int i = 0; i < 6; ++i)
    if (i != pair[0] && i != pair[1]) rest.push_back(i);
  MultiPoly last = MultiPoly::zero(f, 3);
  for (int k = 0; k < 3; ++k) {
    im[rest[k]] = MultiPoly::variable(f, 3, k);
    last = last - MultiPoly::variable(f, 3, k);
  }
  im[rest[3]] = last;
  return im;
}

std::vector<MultiPoly> d_line_images(const Field* f,
                                     const std::array<int, 3>& triple) {
  std::vector<MultiPoly> im(6, MultiPoly::zero(f, 2));
  std::vector<int> rest;
  for (int i = 0; i < 6; ++i)
    if (i != triple[0] && i != triple[1] && i != triple[2]) rest.push_back(i);
  im[rest[0]] = MultiPoly::variable(f, 2, 0);
  im[rest[1]] = MultiPoly::variable(f, 2, 1);
  im[rest[2]] = -MultiPoly::variable(f, 2, 0) - MultiPoly::variable(f, 2, 1);
  return im;
}

PlaneFamilies plane_families() {
  const Field* Q = Field::Q();
  PlaneFamilies out;
  // 15 pairings of {0..5} into three unordered pairs
  for (int j = 1; j < 6; ++j) {  // partner of 0
    std::vector<int> rest;
    for (int i = 1; i < 6; ++i)
      if (i != j) rest.push_back(i);
    for (int k = 1; k < 4; ++k) {  // partner of rest[0]
      std::array<int, 6> pairing{0, j, rest[0], rest[k], 0, 0};
      std::vector<int> last;
      for (int i = 1; i < 4; ++i)
        if (i != k) last.push_back(rest[i]);
      pairing[4] = last[0];
      pairing[5] = last[1];
      out.s_planes.push_back(pairing);
    }
  }
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) out.v_planes.push_back({i, j});
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      for (int k = j + 1; k < 6; ++k) out.d_lines.push_back({i, j, k});

  std::vector<Scalar> node;
  for (long v : {1, 1, 1, -1, -1, -1}) node.push_back(Scalar::of_int(Q, v));
  out.nodes = s6_orbit(ProjPoint::of(node));

  // symbolic containment in N (both defining equations pull back to zero)
  MultiPoly fn = nieto_quintic(Q), su = sum_u(Q);
  for (const auto& sp : out.s_planes) {
    auto im = s_plane_images(Q, sp);
    if (!fn.substitute(im).is_zero() || !su.substitute(im).is_zero())
      throw Error("S-plane not contained in N");
  }
  for (const auto& vp : out.v_planes) {
    auto im = v_plane_images(Q, vp);
    if (!fn.substitute(im).is_zero() || !su.substitute(im).is_zero())
      throw Error("V-plane not contained in N");
  }
  for (const auto& dl : out.d_lines) {
    auto im = d_line_images(Q, dl);
    if (!fn.substitute(im).is_zero() || !su.substitute(im).is_zero())
      throw Error("D-line not contained in N");
  }
  for (const auto& nd : out.nodes)
    if (!n_membership(nd).on_n) throw Error("node not on N");
  return out;
}

std::vector<ProjPoint> s6_orbit(const ProjPoint& p, bool as_projective) {
  if (p.c.size() != 6) throw Error("S6 acts on P^5 here");
  std::array<int, 6> perm{0, 1, 2, 3, 4, 5};
  std::map<std::string, ProjPoint> seen;
  do {
    std::vector<Scalar> v;
    v.reserve(6);
    for (int i = 0; i < 6; ++i) v.push_back(p.c[perm[i]]);
    if (as_projective) {
      ProjPoint q = ProjPoint::of(std::move(v));
      std::string key = q.str();
      seen.emplace(std::move(key), std::move(q));
    } else {
      std::string key;
      for (const auto& x : v) key += x.str() + ",";
      seen.emplace(std::move(key), ProjPoint{std::move(v)});
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<ProjPoint> out;
  out.reserve(seen.size());
  for (auto& kv : seen) out.push_back(std::move(kv.second));
  return out;
}

size_t s6_orbit_size_raw(const std::vector<Scalar>& v) {
  if (v.size() != 6) throw Error("S6 acts on 6 coordinates here");
  std::array<int, 6> perm{0, 1, 2, 3, 4, 5};
  std::set<std::string> seen;
  do {
    std::string key;
    for (int i = 0; i < 6; ++i) key += v[perm[i]].str() + ",";
    seen.insert(key);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return seen.size();
}

FiberCount squaring_fiber(const ProjPoint& u) {
  const Field* f = u.field();
  if (!f->is_prime()) throw Error("fiber count expects a prime field");
  if (u.c.size() != 6) throw Error("N lives in P^5");
  for (const auto& c : u.c)
    if (c.is_zero()) return {true, 0};
  std::set<std::string> pts;
  for (uint64_t l = 1; l < f->prime(); ++l) {
    Scalar lam = Scalar::residue(f, l);
    std::vector<Scalar> roots;
    bool ok = true;
    for (const auto& c : u.c) {
      Scalar t = lam * c;
      if (!t.is_square()) {
        ok = false;
        break;
      }
      roots.push_back(t.sqrt());
    }
    if (!ok) continue;
    for (int mask = 0; mask < 64; ++mask) {
      std::vector<Scalar> x;
      x.reserve(6);
      for (int i = 0; i < 6; ++i)
        x.push_back((mask >> i) & 1 ? -roots[i] : roots[i]);
      pts.insert(ProjPoint::of(std::move(x)).str());
    }
  }
  return {false, (int)pts.size()};
}

SingularCensus singular_census_N(uint64_t p) {
  if (p < 7) throw Error("census needs p >= 7");
  FqCtx C(p);
  const Field* Q = Field::Q();
  MultiPoly fnq = nieto_quintic(Q);
  FqPoly fn = FqPoly::compile(C, fnq);
  std::array<FqPoly, 6> dfn;
  for (int i = 0; i < 6; ++i) dfn[i] = FqPoly::compile(C, fnq.partial(i));

  // node reductions mod p, as normalized packed vectors
  std::set<std::vector<uint32_t>> node_set;
  {
    std::vector<Scalar> node;
    for (long v : {1, 1, 1, -1, -1, -1}) node.push_back(Scalar::of_int(Q, v));
    for (const auto& nd : s6_orbit(ProjPoint::of(node))) {
      std::vector<uint32_t> w;
      uint32_t lead = 0;
      for (const auto& c : nd.c) {
        uint32_t r = (uint32_t)mpz_fdiv_ui(c.rat().get_num().get_mpz_t(), p);
        if (!lead && r) lead = r;
        w.push_back(r);
      }
      uint32_t li = C.inv(lead);
      for (auto& r : w) r = C.mul(r, li);
      node_set.insert(w);
    }
  }

  SingularCensus out;
  out.prime = p;
  // points of the hyperplane Sum u = 0: embed P^4 by u5 = -(u0+...+u4)
  fq_enumerate_points(C, 4, [&](const uint32_t* v) {
    uint32_t u[6];
    uint32_t s = 0;
    for (int i = 0; i < 5; ++i) {
      u[i] = v[i];
      s = C.add(s, v[i]);
    }
    u[5] = C.neg(s);
    if (fn.eval(C, u) != 0) return;
    ++out.points_on_n;
    // singular iff all six partials are equal (gradient parallel to (1..1))
    uint32_t d0 = dfn[0].eval(C, u);
    for (int i = 1; i < 6; ++i)
      if (dfn[i].eval(C, u) != d0) return;
    std::vector<uint32_t> w(u, u + 6);
    int zeros = 0;
    for (auto& r : w)
      if (!r) ++zeros;
    std::string cls;
    if (node_set.count(w))
      cls = "node";
    else if (zeros >= 3)
      cls = "dline";
    else
      cls = "anomaly";
    if (cls == "node") ++out.node_count;
    if (cls == "dline") ++out.dline_count;
    if (cls == "anomaly") ++out.anomaly_count;
    out.singular.push_back({std::move(w), std::move(cls)});
  });
  return out;
}

}  // namespace hq
