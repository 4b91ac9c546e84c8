#include <hq/modgroups.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <set>

namespace hq {

// ---------- Sp(4,F_2) ----------

namespace f2 {

uint16_t transpose(uint16_t m) {
  uint16_t out = 0;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++)
      if (m & (uint16_t(1) << (4 * i + j))) out |= uint16_t(1) << (4 * j + i);
  return out;
}

uint16_t mul(uint16_t x, uint16_t y) {
  uint16_t yt = transpose(y), out = 0;
  for (int i = 0; i < 4; i++) {
    uint16_t rx = (x >> (4 * i)) & 0xF;
    for (int j = 0; j < 4; j++) {
      uint16_t cy = (yt >> (4 * j)) & 0xF;
      if (__builtin_popcount(rx & cy) & 1) out |= uint16_t(1) << (4 * i + j);
    }
  }
  return out;
}

uint16_t identity() { return 0x8421; }

uint16_t jmat() {
  // entries (0,2),(1,3),(2,0),(3,1)
  return uint16_t(1 << 2 | 1 << 7 | 1 << 8 | 1 << 13);
}

}  // namespace f2

bool Sp4F2::contains(uint16_t m) const {
  return std::binary_search(elems.begin(), elems.end(), m);
}

uint16_t Sp4F2::inverse(uint16_t m) const {
  // M^T J M = J and J^2 = I over F_2, so M^-1 = J M^T J
  return f2::mul(f2::mul(f2::jmat(), f2::transpose(m)), f2::jmat());
}

std::vector<size_t> Sp4F2::class_sizes() const {
  std::vector<bool> seen(1 << 16, false);
  std::vector<size_t> sizes;
  for (uint16_t e : elems) {
    if (seen[e]) continue;
    std::set<uint16_t> cls;
    for (uint16_t g : elems) cls.insert(f2::mul(f2::mul(g, e), inverse(g)));
    for (uint16_t c : cls) seen[c] = true;
    sizes.push_back(cls.size());
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

Sp4F2 sp4_f2_enumerate() {
  Sp4F2 out;
  uint16_t j = f2::jmat();
  for (uint32_t m = 0; m < (1u << 16); m++) {
    uint16_t mm = uint16_t(m);
    if (f2::mul(f2::mul(f2::transpose(mm), j), mm) == j) out.elems.push_back(mm);
  }
  return out;
}

std::vector<size_t> s6_class_sizes() {
  std::vector<int> p = {0, 1, 2, 3, 4, 5};
  std::map<std::vector<int>, size_t> by_type;
  do {
    std::array<bool, 6> vis{};
    std::vector<int> type;
    for (int i = 0; i < 6; i++) {
      if (vis[i]) continue;
      int len = 0, j = i;
      while (!vis[j]) vis[j] = true, j = p[j], len++;
      type.push_back(len);
    }
    std::sort(type.begin(), type.end());
    by_type[type]++;
  } while (std::next_permutation(p.begin(), p.end()));
  std::vector<size_t> sizes;
  for (auto& [t, n] : by_type) sizes.push_back(n);
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

uint16_t mat_mod2(const Mat& g) {
  if (g.rows != 4 || g.cols != 4) throw Error("4x4 expected");
  uint16_t out = 0;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++) {
      const mpq_class& q = g.at(i, j).rat();
      if (mpz_even_p(q.get_den().get_mpz_t())) throw Error("even denominator mod 2");
      if (mpz_odd_p(q.get_num().get_mpz_t())) out |= uint16_t(1) << (4 * i + j);
    }
  return out;
}

// ---------- congruence patterns ----------

Mat sp_j(const Field* f) {
  Mat j(f, 4, 4);
  auto one = Scalar::of_int(f, 1);
  j.at(0, 2) = one;
  j.at(1, 3) = one;
  j.at(2, 0) = -one;
  j.at(3, 1) = -one;
  return j;
}

bool is_symplectic(const Mat& g) {
  if (g.rows != 4 || g.cols != 4) throw Error("4x4 expected");
  Mat j = sp_j(g.field);
  return g.transpose() * j * g == j;
}

namespace {

// entry (i,j) must lie in (num/den) Z
struct PatEntry {
  int num, den;
};
using Pattern = std::array<std::array<PatEntry, 4>, 4>;

const Pattern& g13_pattern() {
  static const Pattern p = {{
      {{{1, 1}, {1, 1}, {1, 1}, {3, 1}}},
      {{{3, 1}, {1, 1}, {3, 1}, {3, 1}}},
      {{{1, 1}, {1, 1}, {1, 1}, {3, 1}}},
      {{{1, 1}, {1, 3}, {1, 1}, {1, 1}}},
  }};
  return p;
}

const Pattern& g13_level2_pattern() {
  static const Pattern p = {{
      {{{2, 1}, {2, 1}, {2, 1}, {6, 1}}},
      {{{6, 1}, {2, 1}, {6, 1}, {6, 1}}},
      {{{2, 1}, {2, 1}, {2, 1}, {6, 1}}},
      {{{2, 1}, {2, 3}, {2, 1}, {2, 1}}},
  }};
  return p;
}

bool in_zmultiple(const mpq_class& q, const PatEntry& m) {
  mpq_class r = q * m.den / m.num;
  r.canonicalize();
  return r.get_den() == 1;
}

// quad-over-Q matrices with purely rational entries drop to Q; anything
// irrational yields nullopt
std::optional<Mat> rational_part(const Mat& g) {
  if (g.field->is_rational()) return g;
  if (!g.field->is_quad() || !g.field->base()->is_rational()) throw Error("rational matrix expected");
  Mat out(Field::Q(), g.rows, g.cols);
  for (size_t i = 0; i < g.rows; i++)
    for (size_t j = 0; j < g.cols; j++) {
      const Scalar& s = g.at(i, j);
      if (!s.im().is_zero()) return std::nullopt;
      out.at(i, j) = s.re();
    }
  return out;
}

Mat lift_mat(const Mat& g, const Field* to) {
  Mat out(to, g.rows, g.cols);
  for (size_t i = 0; i < g.rows; i++)
    for (size_t j = 0; j < g.cols; j++) out.at(i, j) = g.at(i, j).lift_to(to);
  return out;
}

std::string mat_str(const Mat& g) {
  std::string s = "[";
  for (size_t i = 0; i < g.rows; i++) {
    s += i ? ";[" : "[";
    for (size_t j = 0; j < g.cols; j++) s += (j ? "," : "") + g.at(i, j).str();
    s += "]";
  }
  return s + "]";
}

}  // namespace

bool gamma_member(const Mat& g, GammaLevel level) {
  if (g.rows != 4 || g.cols != 4) throw Error("4x4 expected");
  auto rg = rational_part(g);
  if (!rg) return false;
  if (!is_symplectic(*rg)) return false;
  const Pattern& pat = level == GammaLevel::g13 ? g13_pattern() : g13_level2_pattern();
  Mat target = *rg;
  if (level == GammaLevel::g13_level2) {
    auto one = Scalar::of_int(Field::Q(), 1);
    for (int i = 0; i < 4; i++) target.at(i, i) -= one;
  }
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++)
      if (!in_zmultiple(target.at(i, j).rat(), pat[i][j])) return false;
  return true;
}

// ---------- V3 ----------

Mat v3_matrix() {
  const Field* f = Field::quad(Field::Q(), Scalar::rational(3));
  Scalar z = Scalar::of_int(f, 0);
  Scalar rt = Scalar::quad(f, Scalar::rational(0), Scalar::rational(1));      // sqrt 3
  Scalar ri = Scalar::quad(f, Scalar::rational(0), Scalar::rational(1, 3));   // 1/sqrt 3
  return Mat::from_rows(f, {{z, ri, z, z}, {rt, z, z, z}, {z, z, z, rt}, {z, z, ri, z}});
}

// ---------- random members ----------

namespace {

Mat mat2(long a, long b, long c, long d) {
  const Field* f = Field::Q();
  return Mat::from_rows(f, {{Scalar::of_int(f, a), Scalar::of_int(f, b)},
                            {Scalar::of_int(f, c), Scalar::of_int(f, d)}});
}

// T = I + lambda * v (Jv)^T, the symplectic transvection x -> x + lambda<x,v>v
Mat transvection(const Scalar& lambda, const std::array<long, 4>& v) {
  const Field* f = Field::Q();
  Mat t = Mat::identity(f, 4);
  std::array<long, 4> jv = {v[2], v[3], -v[0], -v[1]};
  for (int i = 0; i < 4; i++)
    for (int k = 0; k < 4; k++)
      t.at(i, k) += lambda * Scalar::of_int(f, v[i]) * Scalar::of_int(f, jv[k]);
  return t;
}

long rng_range(std::mt19937_64& rng, long lo, long hi) {
  return lo + long(rng() % uint64_t(hi - lo + 1));
}

Mat random_word(std::mt19937_64& rng, const std::vector<Mat>& gens, int lo, int hi) {
  Mat g = Mat::identity(Field::Q(), 2);
  int n = int(rng_range(rng, lo, hi));
  for (int i = 0; i < n; i++) g = g * gens[rng() % gens.size()];
  return g;
}

}  // namespace

Mat random_sl2z(std::mt19937_64& rng) {
  static const std::vector<Mat> gens = {mat2(1, 1, 0, 1), mat2(1, -1, 0, 1), mat2(0, -1, 1, 0)};
  return random_word(rng, gens, 3, 8);
}

Mat random_sl2z_even(std::mt19937_64& rng) {
  static const std::vector<Mat> gens = {mat2(1, 2, 0, 1), mat2(1, -2, 0, 1),
                                        mat2(1, 0, 2, 1), mat2(1, 0, -2, 1),
                                        mat2(-1, 0, 0, -1)};
  return random_word(rng, gens, 2, 6);
}

Mat sample_gamma13(std::mt19937_64& rng) {
  Mat g = Mat::identity(Field::Q(), 4);
  int nf = int(rng_range(rng, 1, 3));
  for (int f = 0; f < nf; f++) {
    switch (rng() % 4) {
      case 0:
        g = g * transvection(Scalar::rational(1),
                             {rng_range(rng, -2, 2), 3 * rng_range(rng, -1, 1),
                              rng_range(rng, -2, 2), rng_range(rng, -2, 2)});
        break;
      case 1:
        g = g * transvection(Scalar::rational(1, 3),
                             {3 * rng_range(rng, -1, 1), 3 * rng_range(rng, -1, 1),
                              3 * rng_range(rng, -1, 1), rng_range(rng, -2, 2)});
        break;
      case 2:
        g = g * stabilizer_embedding(random_sl2z(rng), random_sl2z(rng), StabWhich::s1);
        break;
      default: {
        Mat m = random_sl2z(rng);
        g = g * stabilizer_embedding(m, m * random_sl2z_even(rng), StabWhich::s2);
      }
    }
  }
  return g;
}

Mat sample_gamma13_2(std::mt19937_64& rng) {
  static const std::vector<Mat> mod4_gens = {mat2(1, 4, 0, 1), mat2(1, -4, 0, 1),
                                             mat2(1, 0, 4, 1), mat2(1, 0, -4, 1)};
  Mat g = Mat::identity(Field::Q(), 4);
  int nf = int(rng_range(rng, 1, 3));
  for (int f = 0; f < nf; f++) {
    switch (rng() % 4) {
      case 0:
        g = g * transvection(Scalar::rational(2),
                             {rng_range(rng, -2, 2), 3 * rng_range(rng, -1, 1),
                              rng_range(rng, -2, 2), rng_range(rng, -2, 2)});
        break;
      case 1:
        g = g * transvection(Scalar::rational(2, 3),
                             {3 * rng_range(rng, -1, 1), 3 * rng_range(rng, -1, 1),
                              3 * rng_range(rng, -1, 1), rng_range(rng, -2, 2)});
        break;
      case 2:
        g = g * stabilizer_embedding(random_sl2z_even(rng), random_sl2z_even(rng), StabWhich::s1);
        break;
      default: {
        Mat m = random_sl2z_even(rng);
        g = g * stabilizer_embedding(m, m * random_word(rng, mod4_gens, 0, 3), StabWhich::s2);
      }
    }
  }
  return g;
}

V3Report v3_checks(int samples, uint64_t seed) {
  V3Report r;
  Mat v3 = v3_matrix();
  const Field* f3 = v3.field;
  r.square_is_identity = (v3 * v3 == Mat::identity(f3, 4));
  r.symplectic = is_symplectic(v3);
  if (!r.square_is_identity) r.failures.push_back("V3^2: " + mat_str(v3 * v3));
  if (!r.symplectic) r.failures.push_back("V3^T J V3: " + mat_str(v3.transpose() * sp_j(f3) * v3));
  Mat v3i = inverse(v3);
  std::mt19937_64 rng(seed);
  r.samples = samples;
  for (int i = 0; i < samples; i++) {
    Mat g = sample_gamma13_2(rng);
    if (!gamma_member(g, GammaLevel::g13_level2)) {
      r.failures.push_back("sample not a member: " + mat_str(g));
      continue;
    }
    Mat gl = lift_mat(g, f3);
    bool ok = gamma_member(v3 * gl * v3i, GammaLevel::g13_level2) &&
              gamma_member(v3i * gl * v3, GammaLevel::g13_level2);
    if (ok)
      r.conjugates_ok++;
    else
      r.failures.push_back("conjugate left the group: " + mat_str(g));
  }
  return r;
}

// ---------- stabilizer embeddings ----------

namespace {

void check_sl2z(const Mat& m, const char* name) {
  if (m.rows != 2 || m.cols != 2 || !m.field->is_rational())
    throw Error(std::string(name) + ": 2x2 rational matrix expected");
  for (size_t i = 0; i < 2; i++)
    for (size_t j = 0; j < 2; j++)
      if (m.at(i, j).rat().get_den() != 1) throw Error(std::string(name) + ": integer entries required");
  if (!(determinant(m) == Scalar::of_int(m.field, 1))) throw Error(std::string(name) + ": det 1 required");
}

}  // namespace

Mat stabilizer_embedding(const Mat& M, const Mat& Mp, StabWhich which) {
  check_sl2z(M, "M");
  check_sl2z(Mp, "M'");
  const Field* f = Field::Q();
  const Scalar &a = M.at(0, 0), &b = M.at(0, 1), &c = M.at(1, 0), &d = M.at(1, 1);
  const Scalar &ap = Mp.at(0, 0), &bp = Mp.at(0, 1), &cp = Mp.at(1, 0), &dp = Mp.at(1, 1);
  Scalar z = Scalar::of_int(f, 0);
  if (which == StabWhich::s1) {
    // second factor conjugated by diag(1,3) so the image fits the
    // paramodular pattern (entries 3b' and c'/3)
    Scalar th = Scalar::of_int(f, 3);
    return Mat::from_rows(f, {{a, z, b, z},
                              {z, ap, z, th * bp},
                              {c, z, d, z},
                              {z, cp / th, z, dp}});
  }
  for (size_t i = 0; i < 2; i++)
    for (size_t j = 0; j < 2; j++) {
      mpq_class diff = M.at(i, j).rat() - Mp.at(i, j).rat();
      if (mpz_odd_p(mpq_numref(diff.get_mpq_t()))) throw Error("parity: M == M' mod 2 required");
    }
  Scalar h = Scalar::rational(1, 2), th = Scalar::of_int(f, 3), tw = Scalar::of_int(f, 2);
  return Mat::from_rows(
      f, {{a, z, tw * b, th * b},
          {th * (a - ap) * h, ap, th * b, th * (th * b + bp) * h},
          {(th * cp + c) * h, -cp, d, th * (d - dp) * h},
          {-cp, tw * cp / th, z, dp}});
}

// ---------- Siegel points ----------

const Field* siegel_field() { return Field::quad(Field::Q(), Scalar::rational(-1)); }

bool siegel_valid(const SiegelPoint& z) {
  const Field* f = siegel_field();
  if (z.t1.field() != f || z.t2.field() != f || z.t3.field() != f) throw Error("Q(i) entries expected");
  const mpq_class &y1 = z.t1.im().rat(), &y2 = z.t2.im().rat(), &y3 = z.t3.im().rat();
  return y1 > 0 && y1 * y3 - y2 * y2 > 0;
}

SiegelPoint siegel_apply(const Mat& g, const SiegelPoint& z) {
  if (g.rows != 4 || g.cols != 4 || !g.field->is_rational()) throw Error("rational 4x4 expected");
  const Field* f = siegel_field();
  Mat gl = lift_mat(g, f);
  // 2x2 blocks of g and Z
  auto blk = [&](size_t r0, size_t c0, size_t i, size_t j) { return gl.at(r0 + i, c0 + j); };
  std::array<Scalar, 4> Z = {z.t1, z.t2, z.t2, z.t3};
  std::array<Scalar, 4> N, D;
  for (size_t i = 0; i < 2; i++)
    for (size_t j = 0; j < 2; j++) {
      N[2 * i + j] = blk(0, 0, i, 0) * Z[j] + blk(0, 0, i, 1) * Z[2 + j] + blk(0, 2, i, j);
      D[2 * i + j] = blk(2, 0, i, 0) * Z[j] + blk(2, 0, i, 1) * Z[2 + j] + blk(2, 2, i, j);
    }
  Scalar det = D[0] * D[3] - D[1] * D[2];
  if (det.is_zero()) throw Error("CZ+D singular");
  std::array<Scalar, 4> Di = {D[3] / det, -D[1] / det, -D[2] / det, D[0] / det};
  std::array<Scalar, 4> W;
  for (size_t i = 0; i < 2; i++)
    for (size_t j = 0; j < 2; j++)
      W[2 * i + j] = N[2 * i] * Di[j] + N[2 * i + 1] * Di[2 + j];
  if (W[1] != W[2]) throw Error("image not symmetric");
  return {W[0], W[1], W[3]};
}

// ---------- index towers ----------

namespace {

// 2x2 matrices over Z/m encoded as 4 digits (a,b,c,d)
std::vector<std::array<int, 4>> sl2_zm(int m) {
  std::vector<std::array<int, 4>> out;
  for (int a = 0; a < m; a++)
    for (int b = 0; b < m; b++)
      for (int c = 0; c < m; c++)
        for (int d = 0; d < m; d++)
          if ((a * d - b * c) % m == 1 || (a * d - b * c) % m == 1 - m)
            out.push_back({a, b, c, d});
  return out;
}

size_t exact_div(size_t a, size_t b, const char* what) {
  if (b == 0 || a % b) throw Error(std::string("non-integral index: ") + what);
  return a / b;
}

}  // namespace

IndexTowers index_towers() {
  IndexTowers t;
  t.sl2z2 = sl2_zm(2).size();
  auto g4 = sl2_zm(4);
  t.sl2z4 = g4.size();
  t.s1_index = t.sl2z2 * t.sl2z2;
  auto eq_mod = [](const std::array<int, 4>& x, const std::array<int, 4>& y, int m) {
    for (int k = 0; k < 4; k++)
      if ((x[k] - y[k]) % m != 0) return false;
    return true;
  };
  const std::array<int, 4> id = {1, 0, 0, 1};
  for (const auto& m : g4)
    for (const auto& mp : g4) {
      if (!eq_mod(m, mp, 2)) continue;
      t.g2++;
      if (!eq_mod(m, id, 2)) continue;
      t.g2pp++;
      if (m == mp) t.g2p++;
    }
  t.idx_a = exact_div(t.g2, t.g2pp, "[G2:G2'']");
  t.idx_b = exact_div(t.g2pp, t.g2p, "[G2'':G2']");
  t.s2_index = t.idx_a * t.idx_b;
  t.kernel_shape = true;
  for (const auto& m : g4)
    if (eq_mod(m, id, 2)) {
      t.kernel_order++;
      bool diag_ok = (m[0] == 1 && m[3] == 1) || (m[0] == 3 && m[3] == 3);
      bool off_ok = (m[1] == 0 || m[1] == 2) && (m[2] == 0 || m[2] == 2);
      if (!diag_ok || !off_ok) t.kernel_shape = false;
    }
  return t;
}

// ---------- orbit counting ----------

std::vector<Perm> perm_closure(const std::vector<Perm>& gens) {
  if (gens.empty()) throw Error("no generators");
  size_t n = gens[0].size();
  Perm id(n);
  for (size_t i = 0; i < n; i++) id[i] = int(i);
  std::set<Perm> seen{id};
  std::vector<Perm> queue{id};
  for (size_t qi = 0; qi < queue.size(); qi++) {
    Perm cur = queue[qi];
    for (const Perm& g : gens) {
      if (g.size() != n) throw Error("degree mismatch");
      Perm nx(n);
      for (size_t i = 0; i < n; i++) nx[i] = cur[g[i]];
      if (seen.insert(nx).second) queue.push_back(nx);
    }
  }
  return {seen.begin(), seen.end()};
}

OrbitCount orbit_count_lemma(const std::vector<Perm>& G, const std::vector<Perm>& Gp,
                             const std::vector<int>& X, int x0) {
  if (G.empty() || Gp.empty() || X.empty()) throw Error("empty input");
  std::set<int> xs(X.begin(), X.end());
  if (!xs.count(x0)) throw Error("x0 not in X");
  std::set<Perm> gset(G.begin(), G.end());
  // transitivity of G on X (and X G-stable)
  std::set<int> orbit{x0};
  std::vector<int> q{x0};
  for (size_t qi = 0; qi < q.size(); qi++)
    for (const Perm& g : G) {
      int y = g[q[qi]];
      if (orbit.insert(y).second) q.push_back(y);
    }
  if (orbit != xs) throw Error("G not transitive on X");
  auto inv = [](const Perm& g) {
    Perm r(g.size());
    for (size_t i = 0; i < g.size(); i++) r[g[i]] = int(i);
    return r;
  };
  auto mul = [](const Perm& a, const Perm& b) {
    Perm r(a.size());
    for (size_t i = 0; i < a.size(); i++) r[i] = a[b[i]];
    return r;
  };
  std::set<Perm> gpset(Gp.begin(), Gp.end());
  for (const Perm& h : Gp)
    if (!gset.count(h)) throw Error("G' not a subgroup of G");
  for (const Perm& h : Gp)
    for (const Perm& k : Gp)
      if (!gpset.count(mul(h, k))) throw Error("G' not a subgroup of G");
  for (const Perm& g : G) {
    Perm gi = inv(g);
    for (const Perm& h : Gp)
      if (!gpset.count(mul(mul(g, h), gi))) throw Error("G' not normal in G");
  }
  OrbitCount oc;
  std::set<int> left(xs);
  while (!left.empty()) {
    int x = *left.begin();
    std::set<int> orb{x};
    std::vector<int> qq{x};
    for (size_t qi = 0; qi < qq.size(); qi++)
      for (const Perm& h : Gp) {
        int y = h[qq[qi]];
        if (orb.insert(y).second) qq.push_back(y);
      }
    for (int y : orb) left.erase(y);
    oc.lhs++;
  }
  size_t s = 0, sp = 0;
  for (const Perm& g : G)
    if (g[x0] == x0) s++;
  for (const Perm& h : Gp)
    if (h[x0] == x0) sp++;
  oc.rhs = exact_div(G.size() * sp, Gp.size() * s, "[G:G']/[S:S']");
  return oc;
}

// ---------- component counts ----------

ComponentCounts component_counts() {
  size_t order = sp4_f2_enumerate().elems.size();
  IndexTowers t = index_towers();
  ComponentCounts cc;
  cc.products = exact_div(order, t.s1_index, "products");
  cc.bielliptic = exact_div(order, t.s2_index, "bielliptic");
  return cc;
}

}  // namespace hq
