#include <hq/dictionary.hpp>

#include <hq/fq.hpp>
#include <hq/heisenberg.hpp>
#include <hq/quintic.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace hq {

namespace {

const Mat& eigen_basis() {
  static const Mat b = wedge_eigenbasis().basis;
  return b;
}

std::string join(const std::vector<Scalar>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x.str();
  return s;
}

}  // namespace

std::vector<Scalar> plucker_form_diagonal() {
  static const std::vector<Scalar> cached = [] {
    const Field* f = Field::Q();
    const Mat& W = eigen_basis();
    Mat G(f, 6, 6);
    Scalar h = Scalar::rational(1, 2);
    for (size_t i = 0; i < 3; ++i) {
      G.at(i, i + 3) = h;
      G.at(i + 3, i) = h;
    }
    Mat Wi = inverse(W);
    Mat M = Wi.transpose() * G * Wi;
    std::vector<Scalar> c;
    for (size_t r = 0; r < 6; ++r) {
      for (size_t s = 0; s < 6; ++s)
        if (r != s && !M.at(r, s).is_zero())
          throw Error("plucker form not diagonal in the wedge eigenbasis");
      if (M.at(r, r).is_zero())
        throw Error("plucker form degenerate in the wedge eigenbasis");
      c.push_back(M.at(r, r));
    }
    return c;
  }();
  return cached;
}

std::vector<Scalar> line_to_u_eigen(const PluckerLine& l) {
  const Field* f = l.pl.at(0).field();
  const Mat& W = eigen_basis();
  const std::vector<Scalar>& c = plucker_form_diagonal();
  std::vector<Scalar> u;
  for (size_t i = 0; i < 6; ++i) {
    Scalar y = Scalar::of_int(f, 0);
    for (size_t j = 0; j < 6; ++j) y += W.at(i, j).lift_to(f) * l.pl[j];
    u.push_back(c[i].lift_to(f) * y * y);
  }
  return u;
}

namespace {

// wedge action of the 15 nontrivial projective translations on Plucker
// vectors, cached per field
const std::vector<Mat>& wedge_translates(const Field* f) {
  static std::map<const Field*, std::vector<Mat>> cache;
  auto it = cache.find(f);
  if (it != cache.end()) return it->second;
  std::vector<Mat> ws;
  for (const HeisElement& g : heis_elements()) {
    if (g.s != 1 || (g.a == 0 && g.b == 0)) continue;
    ws.push_back(wedge_matrix(schrodinger_matrix(f, g)));
  }
  return cache.emplace(f, std::move(ws)).first->second;
}

}  // namespace

bool heis_orbit_skew(const PluckerLine& l) {
  const Field* f = l.pl.at(0).field();
  // B(x, y) = x0 y3 + x3 y0 + x1 y4 + x4 y1 + x2 y5 + x5 y2 vanishes iff the
  // two lines meet (or coincide).  B is preserved up to sign by the wedge
  // action, so testing l against its 15 translates covers every orbit pair.
  for (const Mat& W : wedge_translates(f)) {
    Scalar b = Scalar::of_int(f, 0);
    for (size_t i = 0; i < 6; ++i) {
      Scalar y = Scalar::of_int(f, 0);
      for (size_t j = 0; j < 6; ++j) y += W.at(i, j) * l.pl[j];
      b += l.pl[(i + 3) % 6] * y;
    }
    if (b.is_zero()) return false;
  }
  return true;
}

std::vector<DictSample> gather_samples(uint64_t p, int count, uint64_t seed) {
  const Field* f = Field::Fp(p);
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + p);
  std::vector<DictSample> out;
  std::set<std::string> seen;
  int guard = 0;
  while ((int)out.size() < count) {
    if (++guard > 4000 * count + 4000)
      throw Error("gather_samples: not enough honest lines over F_" +
                  std::to_string(p));
    auto pt = [&] {
      std::vector<Scalar> v;
      for (int i = 0; i < 4; ++i) v.push_back(Scalar::residue(f, rng() % p));
      return v;
    };
    std::vector<Scalar> a = pt(), b = pt();
    if (rank_of(Mat::from_rows(f, {a, b})) != 2) continue;
    PluckerLine l = plucker_of_line(ProjPoint::of(a), ProjPoint::of(b));
    if (!n_membership(ProjPoint::of(line_to_u_eigen(l))).on_n) continue;
    if (!seen.insert(l.str()).second) continue;
    QuarticThroughLine qtl = quartic_through_line(l);
    if (qtl.kind != QuarticThroughLine::unique) continue;
    // the tetrahedral classes (unions of four planes) pass both filters
    // above; their censuses have 6p-2 points, honest classes 0 or 4
    size_t cen = singular_points(qtl.coeffs->to_poly(), p).size();
    if (cen != 0 && cen != 4) continue;
    out.push_back({l, *qtl.coeffs});
  }
  return out;
}

namespace {

// slice anchor on the first four columns, at twice the canonical scale so
// every pinned entry is an integer: A and E vanish on {u4=u5=0}, and twice
// (B, C, D) restricts to the three sign patterns
const int kBase[5][4] = {{0, 0, 0, 0},
                         {-1, -1, 1, 1},
                         {-1, 1, -1, 1},
                         {-1, 1, 1, -1},
                         {0, 0, 0, 0}};

std::vector<std::vector<Scalar>> dict_nodes(const Field* f) {
  std::vector<std::vector<Scalar>> out;
  for (const ProjPoint& n : plane_families().nodes) {
    std::vector<Scalar> v;
    for (const Scalar& x : n.c) v.push_back(x.lift_to(f));
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<QuarticCoeffs> dict_squares(const Field* f) {
  static const std::vector<QuarticCoeffs> over_q = [] {
    std::vector<QuarticCoeffs> sq;
    for (const QuadricLine& ql : character_eigenlines(Field::Q()))
      sq.push_back(coeffs_of_invariant(ql.quadric * ql.quadric).normalized());
    return sq;
  }();
  std::vector<QuarticCoeffs> out;
  for (const QuarticCoeffs& s : over_q) {
    std::array<Scalar, 5> c;
    for (int r = 0; r < 5; ++r) c[r] = s.c[r].lift_to(f);
    out.push_back(QuarticCoeffs{c});
  }
  return out;
}

// 5x6 matrix over f from the anchor columns and the ten unknowns
Mat assemble(const Field* f, const std::vector<Scalar>& x) {
  Mat L(f, 5, 6);
  for (int r = 0; r < 5; ++r) {
    for (int k = 0; k < 4; ++k) L.at(r, k) = Scalar::of_int(f, kBase[r][k]);
    L.at(r, 4) = x[2 * r];
    L.at(r, 5) = x[2 * r + 1];
  }
  return L;
}

struct Candidate {
  std::vector<Scalar> x;     // the ten unknowns
  std::array<int, 10> bij;   // node index -> square index
};

// cross-multiplied rows forcing L(node) proportional to the square: ten
// affine equations in the ten unknowns
void assignment_rows(const Field* f, const std::vector<Scalar>& n,
                     const QuarticCoeffs& s,
                     std::vector<std::vector<Scalar>>& rows,
                     std::vector<Scalar>& rhs) {
  std::array<Scalar, 5> K;
  for (int r = 0; r < 5; ++r) {
    K[r] = Scalar::of_int(f, 0);
    for (int k = 0; k < 4; ++k) K[r] += Scalar::of_int(f, kBase[r][k]) * n[k];
  }
  const Scalar z = Scalar::of_int(f, 0);
  for (int r = 0; r < 5; ++r)
    for (int t = r + 1; t < 5; ++t) {
      std::vector<Scalar> row(10, z);
      row[2 * r] += s.c[t] * n[4];
      row[2 * r + 1] += s.c[t] * n[5];
      row[2 * t] -= s.c[r] * n[4];
      row[2 * t + 1] -= s.c[r] * n[5];
      rows.push_back(std::move(row));
      rhs.push_back(-(s.c[t] * K[r] - s.c[r] * K[t]));
    }
}

// does x realize a full node -> square bijection?  fills bij on success
bool full_bijection(const Field* f, const std::vector<Scalar>& x,
                    const std::vector<std::vector<Scalar>>& nodes,
                    const std::vector<QuarticCoeffs>& squares,
                    std::array<int, 10>& bij) {
  Mat L = assemble(f, x);
  std::array<bool, 10> used{};
  for (int i = 0; i < 10; ++i) {
    std::array<Scalar, 5> img;
    bool nonzero = false;
    for (int r = 0; r < 5; ++r) {
      Scalar a = Scalar::of_int(f, 0);
      for (int k = 0; k < 6; ++k) a += L.at(r, k) * nodes[i][k];
      nonzero = nonzero || !a.is_zero();
      img[r] = a;
    }
    if (!nonzero) return false;
    QuarticCoeffs qi{img};
    int hit = -1;
    for (int t = 0; t < 10; ++t)
      if (!used[t] && qi.proportional_to(squares[t])) {
        hit = t;
        break;
      }
    if (hit < 0) return false;
    used[hit] = true;
    bij[i] = hit;
  }
  return true;
}

struct SearchStats {
  int solved = 0, bijections = 0;
};

// anchor search: assign four nodes covering both (n4, n5) sign directions
// twice each (otherwise one slice combination stays free) to distinct
// squares, solve each cross-multiplied affine system, keep unique solutions
// realizing a full bijection (deduplicated)
std::vector<Candidate> structural_solutions(const Field* f, SearchStats& st) {
  std::vector<std::vector<Scalar>> nodes = dict_nodes(f);
  std::vector<QuarticCoeffs> squares = dict_squares(f);
  const int anchor[4] = {0, 1, 2, 5};
  std::vector<Candidate> found;
  std::set<std::string> keys;
  for (int t0 = 0; t0 < 10; ++t0) {
    std::vector<std::vector<Scalar>> r0;
    std::vector<Scalar> b0;
    assignment_rows(f, nodes[anchor[0]], squares[t0], r0, b0);
    for (int t1 = 0; t1 < 10; ++t1) {
      if (t1 == t0) continue;
      std::vector<std::vector<Scalar>> r1 = r0;
      std::vector<Scalar> b1 = b0;
      assignment_rows(f, nodes[anchor[1]], squares[t1], r1, b1);
      if (!solve_linear(Mat::from_rows(f, r1), &b1).consistent) continue;
      for (int t2 = 0; t2 < 10; ++t2) {
        if (t2 == t0 || t2 == t1) continue;
        std::vector<std::vector<Scalar>> r2 = r1;
        std::vector<Scalar> b2 = b1;
        assignment_rows(f, nodes[anchor[2]], squares[t2], r2, b2);
        if (!solve_linear(Mat::from_rows(f, r2), &b2).consistent) continue;
        for (int t3 = 0; t3 < 10; ++t3) {
          if (t3 == t0 || t3 == t1 || t3 == t2) continue;
          std::vector<std::vector<Scalar>> r3 = r2;
          std::vector<Scalar> b3 = b2;
          assignment_rows(f, nodes[anchor[3]], squares[t3], r3, b3);
          LinSolve ls = solve_linear(Mat::from_rows(f, r3), &b3);
          if (!ls.consistent || !ls.kernel.empty()) continue;
          ++st.solved;
          Candidate c;
          c.x = *ls.particular;
          if (!full_bijection(f, c.x, nodes, squares, c.bij)) continue;
          ++st.bijections;
          if (keys.insert(join(c.x)).second) found.push_back(std::move(c));
        }
      }
    }
  }
  return found;
}

// index of the tie-break node (1,1,-1,-1,1,-1) and of the tie-break square
// [z0 z1 + z2 z3]^2 = (0:1:0:0:2)
int tiebreak_node(const Field* f, const std::vector<std::vector<Scalar>>& nodes) {
  const int pat[6] = {1, 1, -1, -1, 1, -1};
  for (size_t i = 0; i < nodes.size(); ++i) {
    bool eq = true;
    for (int k = 0; k < 6; ++k)
      eq = eq && nodes[i][k] == Scalar::of_int(f, pat[k]);
    if (eq) return (int)i;
  }
  throw Error("fit_dictionary: tie-break node missing from the node list");
}

int tiebreak_square(const Field* f, const std::vector<QuarticCoeffs>& squares) {
  std::array<Scalar, 5> c{Scalar::of_int(f, 0), Scalar::of_int(f, 1),
                          Scalar::of_int(f, 0), Scalar::of_int(f, 0),
                          Scalar::of_int(f, 2)};
  QuarticCoeffs target{c};
  for (size_t t = 0; t < squares.size(); ++t)
    if (squares[t].proportional_to(target)) return (int)t;
  throw Error("fit_dictionary: tie-break square missing from the square list");
}

// resolve the mirror pair: exactly two solutions expected, exactly one of
// which sends the tie-break node to the tie-break square
Candidate pick_canonical(const Field* f, std::vector<Candidate> cands,
                         const SearchStats& st, const std::string& where) {
  if (cands.empty())
    throw Error("fit_dictionary: structural constraints infeasible " + where +
                ": none of the 5040 anchor assignments extends to a "
                "node/square bijection (" +
                std::to_string(st.solved) + " unique solves, " +
                std::to_string(st.bijections) + " bijections)");
  if (cands.size() != 2) {
    std::string msg = "fit_dictionary: ambiguous fit " + where + ": " +
                      std::to_string(cands.size()) +
                      " solutions (expected the mirror pair)";
    for (const Candidate& c : cands) msg += "\n  solution: " + join(c.x);
    throw Error(msg);
  }
  std::vector<std::vector<Scalar>> nodes = dict_nodes(f);
  std::vector<QuarticCoeffs> squares = dict_squares(f);
  int ni = tiebreak_node(f, nodes), st_sq = tiebreak_square(f, squares);
  int hits = 0;
  Candidate* pick = nullptr;
  for (Candidate& c : cands)
    if (c.bij[ni] == st_sq) {
      ++hits;
      pick = &c;
    }
  if (hits != 1)
    throw Error("fit_dictionary: tie-break failed " + where + ": " +
                std::to_string(hits) +
                " of 2 solutions send (1,1,-1,-1,1,-1) to [z0 z1 + z2 z3]^2");
  return *pick;
}

// Wang-style rational reconstruction: n/d with x d == n (mod M) and
// |n|, d <= sqrt(M/2)
std::optional<mpq_class> rat_recon(mpz_class x, const mpz_class& M) {
  x %= M;
  if (x < 0) x += M;
  mpz_class r0 = M, r1 = x, t0 = 0, t1 = 1;
  mpz_class bound2 = M / 2;
  while (r1 * r1 > bound2) {
    if (r1 == 0) return std::nullopt;
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0) return std::nullopt;
  mpz_class n = r1, d = t1;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (d * d > bound2 || gcd(n, d) != 1) return std::nullopt;
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

}  // namespace

DictMap fit_dictionary(const std::vector<DictSample>& samples,
                       const std::vector<uint64_t>& primes) {
  if (primes.size() < 2)
    throw Error("fit_dictionary: need samples over at least 2 primes");
  if (samples.size() < 30)
    throw Error("fit_dictionary: need at least 30 samples, got " +
                std::to_string(samples.size()));
  for (uint64_t p : primes)
    if (p < 5)
      throw Error("fit_dictionary: unsupported prime " + std::to_string(p) +
                  " (need p >= 5)");
  std::map<uint64_t, std::vector<const DictSample*>> by_p;
  for (const DictSample& s : samples) {
    const Field* f = s.line.pl.at(0).field();
    if (!f->is_prime())
      throw Error("fit_dictionary: samples must live over prime fields");
    by_p[f->prime()].push_back(&s);
  }

  // stage A: structural solve per prime
  std::vector<Candidate> picks;
  for (uint64_t p : primes) {
    if (by_p.find(p) == by_p.end())
      throw Error("fit_dictionary: no samples over F_" + std::to_string(p));
    const Field* f = Field::Fp(p);
    SearchStats st;
    std::vector<Candidate> cands = structural_solutions(f, st);
    picks.push_back(
        pick_canonical(f, std::move(cands), st, "mod " + std::to_string(p)));
  }

  // CRT per unknown, then rational reconstruction
  const Field* Q = Field::Q();
  std::vector<Scalar> xq;
  for (size_t j = 0; j < 10; ++j) {
    mpz_class x = (unsigned long)picks[0].x[j].res();
    mpz_class M = (unsigned long)primes[0];
    for (size_t i = 1; i < primes.size(); ++i) {
      mpz_class p = (unsigned long)primes[i];
      mpz_class Minv;
      mpz_class Mp = M % p;
      if (mpz_invert(Minv.get_mpz_t(), Mp.get_mpz_t(), p.get_mpz_t()) == 0)
        throw Error("fit_dictionary: repeated prime in prime list");
      mpz_class diff =
          ((mpz_class((unsigned long)picks[i].x[j].res()) - x) % p + p) % p;
      x += M * (diff * Minv % p);
      M *= p;
    }
    auto q = rat_recon(x, M);
    if (!q)
      throw Error("fit_dictionary: rational reconstruction failed at unknown " +
                  std::to_string(j) + " (add more primes)");
    xq.push_back(Scalar::rational(*q));
  }

  // exact re-verification over Q
  {
    std::array<int, 10> bij;
    if (!full_bijection(Q, xq, dict_nodes(Q), dict_squares(Q), bij))
      throw Error(
          "fit_dictionary: reconstructed map fails the node/square bijection "
          "over Q (unknowns " + join(xq) + ")");
    int ni = tiebreak_node(Q, dict_nodes(Q));
    if (bij[ni] != tiebreak_square(Q, dict_squares(Q)))
      throw Error("fit_dictionary: reconstructed map violates the tie-break "
                  "convention over Q");
  }

  // gauge: rows sum to zero, B row scaled to (-1,-1,1,1,0,0)/2
  DictMap d;
  d.L = assemble(Q, xq);
  for (size_t r = 0; r < 5; ++r) {
    Scalar s = Scalar::of_int(Q, 0);
    for (size_t k = 0; k < 6; ++k) s += d.L.at(r, k);
    Scalar c = -(s / Scalar::of_int(Q, 6));
    for (size_t k = 0; k < 6; ++k) d.L.at(r, k) += c;
  }
  if (d.L.at(1, 2).is_zero())
    throw Error("fit_dictionary: anchor entry vanished after gauging");
  Scalar g = Scalar::rational(1, 2) / d.L.at(1, 2);
  for (Scalar& x : d.L.a) x *= g;
  if (rank_of(d.L) != 5) throw Error("fit_dictionary: fitted map not rank 5");

  // stage B: every sample's quartic pulls back to a point of the quintic
  for (const DictSample& s : samples) {
    ProjPoint u = moduli_point(d, s.coeffs);
    if (!n_membership(u).on_n)
      throw Error("fit_dictionary: sample quartic " + s.coeffs.str() +
                  " pulls back off the quintic (line " + s.line.str() +
                  ", class point " + u.str() + ")");
  }
  return d;
}

std::vector<Scalar> DictMap::line_to_u(const PluckerLine& l) const {
  std::vector<Scalar> e = line_to_u_eigen(l);
  std::vector<Scalar> u;
  for (int k = 0; k < 6; ++k) u.push_back(e[labeling[k]]);
  return u;
}

std::string DictMap::str() const {
  std::string s = "dictionary\nlabeling";
  for (int k = 0; k < 6; ++k) s += " " + std::to_string(labeling[k]);
  for (size_t r = 0; r < 5; ++r) {
    s += "\nrow";
    for (size_t k = 0; k < 6; ++k) s += " " + L.at(r, k).str();
  }
  return s + "\n";
}

DictMap DictMap::parse(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  if (!(in >> tok) || tok != "dictionary")
    throw Error("dictionary parse: bad header");
  if (!(in >> tok) || tok != "labeling")
    throw Error("dictionary parse: missing labeling");
  DictMap d;
  std::array<bool, 6> seen{};
  for (int k = 0; k < 6; ++k) {
    int v;
    if (!(in >> v) || v < 0 || v > 5 || seen[v])
      throw Error("dictionary parse: labeling is not a permutation");
    seen[v] = true;
    d.labeling[k] = v;
  }
  for (size_t r = 0; r < 5; ++r) {
    if (!(in >> tok) || tok != "row")
      throw Error("dictionary parse: missing row");
    for (size_t k = 0; k < 6; ++k) {
      if (!(in >> tok)) throw Error("dictionary parse: short row");
      d.L.at(r, k) = Scalar::parse(Field::Q(), tok);
    }
  }
  for (size_t r = 0; r < 5; ++r) {
    Scalar s = Scalar::of_int(Field::Q(), 0);
    for (size_t k = 0; k < 6; ++k) s += d.L.at(r, k);
    if (!s.is_zero()) throw Error("dictionary parse: rows must sum to zero");
  }
  if (rank_of(d.L) != 5) throw Error("dictionary parse: map not rank 5");
  return d;
}

QuarticCoeffs apply_dictionary(const DictMap& d, const ProjPoint& u) {
  if (u.c.size() != 6) throw Error("apply_dictionary: expected a point of P^5");
  const Field* f = u.field();
  Scalar s = Scalar::of_int(f, 0);
  for (const Scalar& x : u.c) s += x;
  if (!s.is_zero())
    throw Error("apply_dictionary: point off the hyperplane sum u = 0");
  std::array<Scalar, 5> img;
  bool nonzero = false;
  for (size_t r = 0; r < 5; ++r) {
    Scalar acc = Scalar::of_int(f, 0);
    for (size_t k = 0; k < 6; ++k) acc += d.L.at(r, k).lift_to(f) * u.c[k];
    nonzero = nonzero || !acc.is_zero();
    img[r] = acc;
  }
  if (!nonzero)
    throw Error("apply_dictionary: image is zero (kernel slice) at " + u.str());
  return QuarticCoeffs{img}.normalized();
}

ProjPoint moduli_point(const DictMap& d, const QuarticCoeffs& q) {
  const Field* f = q.field();
  Mat M(f, 6, 6);
  for (size_t r = 0; r < 5; ++r)
    for (size_t k = 0; k < 6; ++k) M.at(r, k) = d.L.at(r, k).lift_to(f);
  for (size_t k = 0; k < 6; ++k) M.at(5, k) = Scalar::of_int(f, 1);
  if (determinant(M).is_zero())
    throw Error("moduli_point: [L; 1] degenerate over this field");
  std::vector<Scalar> rhs(q.c.begin(), q.c.end());
  rhs.push_back(Scalar::of_int(f, 0));
  return ProjPoint::of(inverse(M).apply(rhs));
}

bool DictReport::all_ok() const {
  for (const auto& c : checks)
    if (!c.ok) return false;
  return true;
}

namespace {

std::vector<uint32_t> fq_normalize(const FqCtx& C, std::vector<uint32_t> v) {
  uint32_t s = 0;
  for (uint32_t x : v)
    if (x) {
      s = C.inv(x);
      break;
    }
  for (uint32_t& x : v) x = C.mul(x, s);
  return v;
}

// does the singular census contain a full projective line?
bool census_has_line(const FqCtx& C,
                     const std::vector<std::vector<uint32_t>>& sing) {
  if (sing.size() < (size_t)C.q() + 1) return false;
  std::set<std::vector<uint32_t>> S(sing.begin(), sing.end());
  for (size_t i = 0; i < sing.size(); ++i)
    for (size_t j = i + 1; j < sing.size(); ++j) {
      bool all = true;
      for (uint32_t t = 0; all && t < C.q(); ++t) {
        std::vector<uint32_t> v(4);
        for (int k = 0; k < 4; ++k)
          v[k] = C.add(sing[i][k], C.mul(t, sing[j][k]));
        all = S.count(fq_normalize(C, v)) != 0;
      }
      if (all) return true;
    }
  return false;
}

using Census = std::set<std::vector<uint32_t>>;

Census census_of(const QuarticCoeffs& q, uint64_t p) {
  auto sing = singular_points(q.to_poly(), p);
  return Census(sing.begin(), sing.end());
}

ProjPoint lift_point(const ProjPoint& u, const Field* f) {
  std::vector<Scalar> v;
  for (const Scalar& x : u.c) v.push_back(x.lift_to(f));
  return ProjPoint::of(v);
}

// basis of the linear slice {u_i = 0 for i in zeros} inside {sum u = 0}
std::vector<ProjPoint> slice_basis(const Field* f, const std::set<int>& zeros) {
  std::vector<int> free_ix;
  for (int k = 0; k < 6; ++k)
    if (!zeros.count(k)) free_ix.push_back(k);
  std::vector<ProjPoint> basis;
  for (size_t i = 0; i + 1 < free_ix.size(); ++i) {
    std::vector<Scalar> v(6, Scalar::of_int(f, 0));
    v[free_ix[i]] = Scalar::of_int(f, 1);
    v[free_ix.back()] = Scalar::of_int(f, -1);
    basis.push_back(ProjPoint::of(v));
  }
  return basis;
}

int zero_count(const std::vector<Scalar>& v) {
  int z = 0;
  for (const Scalar& x : v) z += x.is_zero();
  return z;
}

}  // namespace

DictReport validate_dictionary(const DictMap& d,
                               const std::vector<uint64_t>& primes,
                               uint64_t seed) {
  DictReport rep;
  const Field* Q = Field::Q();
  PlaneFamilies fam = plane_families();
  auto add = [&](std::string id, bool ok, std::string exp, std::string obs) {
    rep.checks.push_back(
        DictCheck{std::move(id), ok, std::move(exp), std::move(obs)});
  };

  // nodes -> squared fundamental quadrics, over Q and over each prime
  auto node_check = [&](const Field* f, const std::string& tag) {
    int good = 0;
    std::string wit;
    for (const ProjPoint& n : fam.nodes) {
      QuarticCoeffs img = apply_dictionary(d, lift_point(n, f));
      if (is_fundamental_square(img))
        ++good;
      else if (wit.empty())
        wit = " first failure at " + n.str();
    }
    add("nodes.squares" + tag, good == 10, "10/10 squares",
        std::to_string(good) + "/10" + wit);
  };
  node_check(Q, "@Q");

  for (uint64_t p : primes) {
    const Field* f = Field::Fp(p);
    const std::string tag = "@" + std::to_string(p);
    FqCtx C(p);
    node_check(f, tag);

    // generic F45 points (fae_generic = off the S-plane and D-line walls):
    // image has A = E = 0 and the census is exactly the 4 poles
    {
      std::mt19937_64 rng(seed * 1000003 + p);
      const Census poles = {
          {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
      int done = 0, bad = 0, guard = 0;
      std::string wit;
      while (done < 20 && ++guard < 4000) {
        std::vector<Scalar> u(6, Scalar::of_int(f, 0));
        for (int k = 0; k < 3; ++k) u[k] = Scalar::residue(f, rng() % p);
        u[3] = -(u[0] + u[1] + u[2]);
        if (u[0].is_zero() && u[1].is_zero() && u[2].is_zero() &&
            u[3].is_zero())
          continue;
        ProjPoint pu = ProjPoint::of(u);
        QuarticCoeffs img = apply_dictionary(d, pu);
        if (!img.c[0].is_zero() || !img.c[4].is_zero()) {
          ++bad;
          wit = " A/E nonzero at " + pu.str();
          break;
        }
        if (!fae_generic(img.c[1], img.c[2], img.c[3])) continue;
        ++done;
        if (census_of(img, p) != poles) {
          ++bad;
          if (wit.empty()) wit = " extra singularities at " + pu.str();
        }
      }
      add("vplane.f45" + tag, done == 20 && bad == 0,
          "20 generic samples, image in {A=E=0}, census = 4 poles",
          std::to_string(done) + " generic samples, " + std::to_string(bad) +
              " failures" + wit);
    }

    // wall-filtered points of all 15 V-planes: the four simple nodes are
    // cut by a Frobenius orbit to a census of size 0, 2 or 4
    {
      std::mt19937_64 rng(seed * 3000017 + p);
      std::map<size_t, int> tally;
      int walls = 0;
      bool ok = true;
      std::string wit;
      for (const std::array<int, 2>& pr : fam.v_planes) {
        std::vector<int> free_ix;
        for (int k = 0; k < 6; ++k)
          if (k != pr[0] && k != pr[1]) free_ix.push_back(k);
        int done = 0, guard = 0;
        while (done < 8 && ++guard < 400) {
          std::vector<Scalar> u(6, Scalar::of_int(f, 0));
          Scalar s = Scalar::of_int(f, 0);
          for (int i = 0; i < 3; ++i) {
            u[free_ix[i]] = Scalar::residue(f, rng() % p);
            s += u[free_ix[i]];
          }
          u[free_ix[3]] = -s;
          // walls: an extra zero (D-line) or an opposite nonzero pair
          // (S-plane)
          bool wall = false;
          for (int i = 0; i < 4; ++i) {
            if (u[free_ix[i]].is_zero()) wall = true;
            for (int j = i + 1; j < 4; ++j)
              if ((u[free_ix[i]] + u[free_ix[j]]).is_zero()) wall = true;
          }
          if (wall) {
            ++walls;
            continue;
          }
          ++done;
          size_t cen = census_of(apply_dictionary(d, ProjPoint::of(u)), p).size();
          tally[cen]++;
          if (cen != 0 && cen != 2 && cen != 4) {
            ok = false;
            if (wit.empty())
              wit = " census " + std::to_string(cen) + " at " +
                    ProjPoint::of(u).str();
          }
        }
        if (done < 8) {
          ok = false;
          wit = " fewer than 8 wall-free samples on V-plane {" +
                std::to_string(pr[0]) + "," + std::to_string(pr[1]) + "}";
        }
      }
      std::string obs;
      for (auto& [cen, n] : tally)
        obs += (obs.empty() ? "census " : ", ") + std::to_string(cen) + " x" +
               std::to_string(n);
      obs += " (" + std::to_string(walls) + " wall hits skipped)";
      if (tally.find(4) == tally.end()) {
        ok = false;
        wit += " no fully rational tetrad seen";
      }
      add("vplane.census" + tag, ok,
          "8 wall-free samples per V-plane, census sizes in {0,2,4}, "
          "at least one 4",
          obs + wit);
    }

    // generic S-plane points: pair of double lines, possibly conjugate --
    // the singular locus contains a line over F_p or over F_{p^2}
    {
      std::mt19937_64 rng(seed * 2000003 + p);
      int found = 0, lifted = 0, guard = 0;
      std::string wit;
      bool ok = true;
      while (found < 5 && ok && ++guard < 400) {
        const std::array<int, 6>& pr =
            fam.s_planes[guard % fam.s_planes.size()];
        Scalar a = Scalar::residue(f, 1 + rng() % (p - 1));
        Scalar b = Scalar::residue(f, 1 + rng() % (p - 1));
        Scalar c = Scalar::residue(f, 1 + rng() % (p - 1));
        if (a * a == b * b || b * b == c * c || a * a == c * c) continue;
        std::vector<Scalar> u(6, Scalar::of_int(f, 0));
        u[pr[0]] = a;
        u[pr[1]] = -a;
        u[pr[2]] = b;
        u[pr[3]] = -b;
        u[pr[4]] = c;
        u[pr[5]] = -c;
        ProjPoint pu = ProjPoint::of(u);
        QuarticCoeffs img = apply_dictionary(d, pu);
        if (census_has_line(C, singular_points(img.to_poly(), p))) {
          ++found;
          continue;
        }
        FqCtx C2(p * p);
        if (census_has_line(C2, singular_points(img.to_poly(), p * p))) {
          ++found;
          ++lifted;
        } else {
          ok = false;
          wit = " no singular line at " + pu.str();
        }
      }
      add("splane.line" + tag, ok && found >= 5,
          "5 generic samples with a singular line over F_p or F_{p^2}",
          std::to_string(found) + " samples with a line, " +
              std::to_string(lifted) + " needing F_{p^2}" + wit);
    }

    // fresh honest samples: class point on the quintic, zero pattern
    // matching the census, distinct from the line's orbit point
    {
      auto hold = gather_samples(p, 20, seed + 0xD1C7);
      int good = 0;
      std::string wit;
      for (const DictSample& s : hold) {
        ProjPoint us = moduli_point(d, s.coeffs);
        ProjPoint ul = ProjPoint::of(line_to_u_eigen(s.line));
        size_t cen = census_of(s.coeffs, p).size();
        int z = zero_count(us.c);
        bool pass = n_membership(us).on_n &&
                    ((cen == 0 && z == 0) || (cen == 4 && z == 2)) &&
                    us.str() != ul.str();
        if (pass)
          ++good;
        else if (wit.empty())
          wit = " first failure at line " + s.line.str() + " (census " +
                std::to_string(cen) + ", class point " + us.str() + ")";
      }
      add("holdout" + tag, good == 20,
          "20/20 class points on the quintic, zeros matching the census, "
          "distinct from the orbit point",
          std::to_string(good) + "/20" + wit);
    }
  }

  // every V-plane image spans a plane of the coefficient P^4; F45 lands in
  // {A=E=0}; the 15 planes are pairwise distinct
  {
    bool ok = true;
    std::string wit;
    std::vector<Mat> spans;
    for (const std::array<int, 2>& pr : fam.v_planes) {
      std::vector<std::vector<Scalar>> rows;
      for (const ProjPoint& b : slice_basis(Q, {pr[0], pr[1]})) {
        QuarticCoeffs img = apply_dictionary(d, b);
        rows.push_back(std::vector<Scalar>(img.c.begin(), img.c.end()));
        if (pr[0] == 4 && pr[1] == 5 &&
            (!img.c[0].is_zero() || !img.c[4].is_zero())) {
          ok = false;
          wit = " F45 image leaves {A=E=0}";
        }
      }
      Mat m = Mat::from_rows(Q, rows);
      if (rank_of(m) != 3) {
        ok = false;
        wit = " span rank " + std::to_string(rank_of(m)) + " at V-plane {" +
              std::to_string(pr[0]) + "," + std::to_string(pr[1]) + "}";
      }
      spans.push_back(m);
    }
    int distinct = 0;
    for (size_t i = 0; i < spans.size(); ++i)
      for (size_t j = i + 1; j < spans.size(); ++j) {
        std::vector<std::vector<Scalar>> rows;
        for (size_t r = 0; r < 3; ++r) {
          std::vector<Scalar> a, b;
          for (size_t k = 0; k < 5; ++k) {
            a.push_back(spans[i].at(r, k));
            b.push_back(spans[j].at(r, k));
          }
          rows.push_back(a);
          rows.push_back(b);
        }
        if (rank_of(Mat::from_rows(Q, rows)) >= 4) ++distinct;
      }
    add("vplane.spans", ok && distinct == 105,
        "15 plane images of rank 3, pairwise distinct, F45 in {A=E=0}",
        std::to_string(distinct) + "/105 pairs distinct" + wit);
  }

  // the D-line {u0=u4=u5=0} maps onto the desmic pencil plane
  // {A=E=0, B+C+D=0}
  auto pencil_member = [](const QuarticCoeffs& q) {
    return q.c[0].is_zero() && q.c[4].is_zero() &&
           (q.c[1] + q.c[2] + q.c[3]).is_zero();
  };
  {
    bool ok = true;
    std::string wit;
    std::vector<std::vector<Scalar>> rows;
    for (const ProjPoint& b : slice_basis(Q, {0, 4, 5})) {
      QuarticCoeffs img = apply_dictionary(d, b);
      if (!pencil_member(img)) {
        ok = false;
        wit = " image " + img.str() + " of " + b.str() + " off the pencil";
      }
      rows.push_back(std::vector<Scalar>(img.c.begin(), img.c.end()));
    }
    if (rank_of(Mat::from_rows(Q, rows)) != 2) {
      ok = false;
      wit += " (image not the full pencil plane)";
    }
    add("dline.pencil", ok, "L045 maps onto {A=E=0, B+C+D=0}",
        ok ? "slice basis lands on the pencil, image rank 2" : wit);
  }

  // the 16 rational pencil base lines: one shared orbit point, which is a
  // node imaged to a squared quadric; members' class points fill the D-line
  {
    std::vector<PluckerLine> lines = desmic_lines(Q);
    bool ok = lines.size() == 16;
    std::string wit = ok ? "" : " expected 16 lines";
    std::set<std::string> us;
    for (const PluckerLine& l : lines) {
      us.insert(ProjPoint::of(line_to_u_eigen(l)).str());
      QuarticThroughLine qtl = quartic_through_line(l);
      if (qtl.kind != QuarticThroughLine::non_unique) {
        ok = false;
        if (wit.empty()) wit = " base line off the pencil: " + l.str();
      }
    }
    const int pat[6] = {1, -1, 1, -1, -1, 1};
    std::vector<Scalar> node;
    for (int k = 0; k < 6; ++k) node.push_back(Scalar::of_int(Q, pat[k]));
    ProjPoint pn = ProjPoint::of(node);
    if (us.size() != 1 || *us.begin() != pn.str()) {
      ok = false;
      wit += " orbit points " + std::to_string(us.size()) +
             ", expected just " + pn.str();
    }
    QuarticCoeffs img = apply_dictionary(d, pn);
    std::array<Scalar, 5> sq{Scalar::of_int(Q, 0), Scalar::of_int(Q, 0),
                             Scalar::of_int(Q, 1), Scalar::of_int(Q, 0),
                             Scalar::of_int(Q, -2)};
    if (!is_fundamental_square(img) ||
        !img.proportional_to(QuarticCoeffs{sq})) {
      ok = false;
      wit += " node image " + img.str() + " not [z0 z2 - z1 z3]^2";
    }
    std::vector<std::vector<Scalar>> rows;
    for (auto [cc, dd] : {std::pair{1, 3}, {2, 7}, {3, 1}}) {
      Desmic dm = desmic_quartic(Scalar::of_int(Q, cc), Scalar::of_int(Q, dd));
      ProjPoint um = moduli_point(d, dm.coeffs);
      if (!um.c[0].is_zero() || !um.c[4].is_zero() || !um.c[5].is_zero() ||
          !n_membership(um).on_n) {
        ok = false;
        wit += " member (" + std::to_string(cc) + ":" + std::to_string(dd) +
               ") class point " + um.str() + " off the D-line";
      }
      rows.push_back(um.c);
    }
    if (rank_of(Mat::from_rows(Q, rows)) != 2) {
      ok = false;
      wit += " member class points do not fill the D-line";
    }
    add("desmic.lines", ok,
        "16 pencil base lines, one shared orbit point = node -> "
        "[z0 z2 - z1 z3]^2, member class points fill L045",
        ok ? "16/16, members on the D-line" : wit);
  }

  return rep;
}

}  // namespace hq
