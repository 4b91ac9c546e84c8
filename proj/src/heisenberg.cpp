#include <hq/heisenberg.hpp>
#include <hq/projective.hpp>

#include <algorithm>
#include <bit>
#include <map>

namespace hq {

static int dot2(uint8_t x, uint8_t y) { return std::popcount(unsigned(x & y)) & 1; }

HeisElement HeisElement::operator*(const HeisElement& o) const {
  int sign = s * o.s * (dot2(b, o.a) ? -1 : 1);
  return {uint8_t(a ^ o.a), uint8_t(b ^ o.b), sign};
}

HeisElement HeisElement::inverse() const {
  return {a, b, s * (dot2(b, a) ? -1 : 1)};
}

std::string HeisElement::str() const {
  auto bits = [](uint8_t v) {
    return std::string("(") + char('0' + ((v >> 1) & 1)) + "," +
           char('0' + (v & 1)) + ")";
  };
  return (s > 0 ? "+" : "-") + bits(a) + bits(b);
}

const std::vector<HeisElement>& heis_elements() {
  static const std::vector<HeisElement> all = [] {
    std::vector<HeisElement> v;
    for (uint8_t a = 0; a < 4; ++a)
      for (uint8_t b = 0; b < 4; ++b)
        for (int s : {1, -1}) v.push_back({a, b, s});
    return v;
  }();
  return all;
}

Mat schrodinger_matrix(const Field* f, const HeisElement& g) {
  Mat m(f, 4, 4);
  for (int x = 0; x < 4; ++x) {
    int col = x ^ g.a;
    int sign = g.s * (dot2(g.b, uint8_t(col)) ? -1 : 1);
    m.at(x, col) = Scalar::of_int(f, sign);
  }
  return m;
}

MultiPoly act_on_poly(const HeisElement& g, const MultiPoly& f) {
  if (f.nvars() != 4) throw Error("Heisenberg action needs 4 variables");
  Mat u = schrodinger_matrix(f.field(), g.inverse());
  std::vector<MultiPoly> images;
  images.reserve(4);
  for (size_t i = 0; i < 4; ++i) {
    MultiPoly im = MultiPoly::zero(f.field(), 4);
    for (size_t j = 0; j < 4; ++j)
      if (!u.at(i, j).is_zero())
        im = im + MultiPoly::variable(f.field(), 4, (int)j).scaled(u.at(i, j));
    images.push_back(std::move(im));
  }
  return f.substitute(images);
}

// degree-d monomial exponent vectors in 4 variables, graded-lex descending
static std::vector<std::vector<uint32_t>> monomials4(int d) {
  std::vector<std::vector<uint32_t>> out;
  for (int e0 = d; e0 >= 0; --e0)
    for (int e1 = d - e0; e1 >= 0; --e1)
      for (int e2 = d - e0 - e1; e2 >= 0; --e2)
        out.push_back({(uint32_t)e0, (uint32_t)e1, (uint32_t)e2,
                       (uint32_t)(d - e0 - e1 - e2)});
  return out;
}

static std::vector<Scalar> poly_coords(
    const MultiPoly& p, const std::vector<std::vector<uint32_t>>& mons) {
  std::vector<Scalar> v;
  v.reserve(mons.size());
  for (const auto& m : mons) v.push_back(p.coeff_of(m));
  return v;
}

static MultiPoly coords_poly(const Field* f,
                             const std::vector<std::vector<uint32_t>>& mons,
                             const std::vector<Scalar>& v) {
  std::vector<Term> ts;
  for (size_t i = 0; i < mons.size(); ++i)
    if (!v[i].is_zero()) ts.push_back({mons[i], v[i]});
  return MultiPoly::from_terms(f, 4, std::move(ts));
}

std::vector<MultiPoly> invariant_subspace(const Field* f, int d) {
  if (d < 1) throw Error("degree must be positive");
  auto mons = monomials4(d);
  size_t n = mons.size();
  // Reynolds operator matrix in the monomial basis
  Mat R(f, n, n);
  for (size_t j = 0; j < n; ++j) {
    MultiPoly mj = MultiPoly::monomial(f, mons[j], Scalar::of_int(f, 1));
    MultiPoly acc = MultiPoly::zero(f, 4);
    for (const auto& g : heis_elements()) acc = acc + act_on_poly(g, mj);
    auto col = poly_coords(acc, mons);
    for (size_t i = 0; i < n; ++i)
      R.at(i, j) = col[i] / Scalar::of_int(f, 32);
  }
  // image of the projection = row space of R^T, echelonized
  Mat Rt = R.transpose();
  auto pivots = rref(Rt);
  std::vector<MultiPoly> basis;
  for (size_t r = 0; r < pivots.size(); ++r) {
    std::vector<Scalar> row(Rt.a.begin() + r * n, Rt.a.begin() + (r + 1) * n);
    basis.push_back(coords_poly(f, mons, row));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// simultaneous +-1 eigen-splitting of a rational space under commuting
// involutions; subspaces carried as column-span matrices

namespace {

struct Subspace {
  Mat cols;                 // n x k, columns span the subspace
  std::vector<int> signs;   // one per generator processed so far
};

// columns of m * coefficient-kernel of (A*m -+ m)
std::vector<Subspace> split_by(const Subspace& S, const Mat& A) {
  const Field* f = S.cols.field;
  size_t n = S.cols.rows, k = S.cols.cols;
  Mat img = A * S.cols;
  std::vector<Subspace> out;
  for (int sign : {1, -1}) {
    Mat sys(f, n, k);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < k; ++j)
        sys.at(i, j) = sign > 0 ? img.at(i, j) - S.cols.at(i, j)
                                : img.at(i, j) + S.cols.at(i, j);
    LinSolve ls = solve_linear(sys, nullptr);
    if (ls.kernel.empty()) continue;
    Mat nb(f, n, ls.kernel.size());
    for (size_t c = 0; c < ls.kernel.size(); ++c) {
      std::vector<Scalar> v(n, Scalar::of_int(f, 0));
      for (size_t i = 0; i < n; ++i) {
        Scalar acc = Scalar::of_int(f, 0);
        for (size_t j = 0; j < k; ++j)
          acc = acc + S.cols.at(i, j) * ls.kernel[c][j];
        nb.at(i, c) = acc;
      }
    }
    Subspace ns{std::move(nb), S.signs};
    ns.signs.push_back(sign);
    out.push_back(std::move(ns));
  }
  return out;
}

std::vector<Subspace> simultaneous_split(const Field* f, size_t n,
                                         const std::vector<Mat>& gens) {
  Subspace whole{Mat::identity(f, n), {}};
  std::vector<Subspace> cur{whole};
  for (const auto& A : gens) {
    std::vector<Subspace> next;
    for (const auto& S : cur)
      for (auto& piece : split_by(S, A)) next.push_back(std::move(piece));
    cur = std::move(next);
  }
  return cur;
}

// primitive integer vector, first nonzero entry positive (rational input)
std::vector<Scalar> primitive_integer(const Field* f,
                                      const std::vector<Scalar>& v) {
  mpz_class l(1), g(0);
  for (const auto& x : v)
    if (!x.is_zero()) l = lcm(l, x.rat().get_den());
  std::vector<mpz_class> w;
  for (const auto& x : v) {
    mpq_class q = x.rat() * mpq_class(l);
    w.push_back(q.get_num());
    g = gcd(g, q.get_num());
  }
  if (g == 0) throw Error("zero vector");
  for (auto& x : w)
    if (x != 0) {
      if (x < 0) g = -g;
      break;
    }
  std::vector<Scalar> out;
  for (auto& x : w) out.push_back(Scalar::rational(mpq_class(x / g)));
  return out;
}

}  // namespace

std::vector<QuadricLine> character_eigenlines(const Field* f) {
  auto mons = monomials4(2);
  size_t n = mons.size();  // 10
  std::vector<HeisElement> gens = {
      {2, 0, 1}, {1, 0, 1}, {0, 2, 1}, {0, 1, 1}};  // T10 T01 C10 C01
  std::vector<Mat> mats;
  for (const auto& g : gens) {
    Mat A(f, n, n);
    for (size_t j = 0; j < n; ++j) {
      MultiPoly mj = MultiPoly::monomial(f, mons[j], Scalar::of_int(f, 1));
      auto col = poly_coords(act_on_poly(g, mj), mons);
      for (size_t i = 0; i < n; ++i) A.at(i, j) = col[i];
    }
    mats.push_back(std::move(A));
  }
  auto pieces = simultaneous_split(f, n, mats);
  std::vector<QuadricLine> out;
  for (const auto& S : pieces) {
    if (S.cols.cols == 0) continue;
    if (S.cols.cols != 1)
      throw Error("quadric eigenspace of dimension > 1");
    std::vector<Scalar> v;
    for (size_t i = 0; i < n; ++i) v.push_back(S.cols.at(i, 0));
    if (f->is_rational()) v = primitive_integer(f, v);
    std::array<int, 4> ch{};
    for (int i = 0; i < 4; ++i) ch[i] = S.signs[i];
    out.push_back(QuadricLine{ch, coords_poly(f, mons, v)});
  }
  std::sort(out.begin(), out.end(), [](const QuadricLine& x, const QuadricLine& y) {
    return x.character < y.character;
  });
  return out;
}

WedgeEigen wedge_eigenbasis() {
  const Field* Q = Field::Q();
  std::vector<HeisElement> gens = {{2, 0, 1}, {1, 0, 1}, {0, 2, 1}, {0, 1, 1}};
  std::vector<Mat> mats;
  for (const auto& g : gens)
    mats.push_back(wedge_matrix(schrodinger_matrix(Q, g)));
  auto pieces = simultaneous_split(Q, 6, mats);
  std::vector<std::pair<std::vector<int>, std::vector<Scalar>>> lines;
  for (const auto& S : pieces) {
    if (S.cols.cols == 0) continue;
    if (S.cols.cols != 1) throw Error("wedge eigenspace of dimension > 1");
    std::vector<Scalar> v;
    for (size_t i = 0; i < 6; ++i) v.push_back(S.cols.at(i, 0));
    lines.push_back({S.signs, primitive_integer(Q, v)});
  }
  if (lines.size() != 6) throw Error("wedge eigenbasis is not a full splitting");
  std::sort(lines.begin(), lines.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  // eigenvector matrix V (columns); coordinates are rows of V^{-1}
  Mat V(Q, 6, 6);
  for (size_t c = 0; c < 6; ++c)
    for (size_t r = 0; r < 6; ++r) V.at(r, c) = lines[c].second[r];
  Mat B = inverse(V);
  for (size_t r = 0; r < 6; ++r) {
    std::vector<Scalar> row(B.a.begin() + r * 6, B.a.begin() + (r + 1) * 6);
    row = primitive_integer(Q, row);
    for (size_t c = 0; c < 6; ++c) B.at(r, c) = row[c];
  }
  WedgeEigen we{std::move(B), heis_elements(), {}};
  // diagonal sign of each group element in the eigenbasis: row r of B is a
  // left eigenvector of W(g)
  for (const auto& g : we.elements) {
    Mat W = wedge_matrix(schrodinger_matrix(Q, g));
    Mat BW = we.basis * W;
    std::array<int, 6> sv{};
    for (size_t r = 0; r < 6; ++r) {
      int sign = 1;
      for (size_t c = 0; c < 6; ++c)
        if (!we.basis.at(r, c).is_zero()) {
          sign = BW.at(r, c) == we.basis.at(r, c) ? 1 : -1;
          break;
        }
      // consistency across the row
      for (size_t c = 0; c < 6; ++c) {
        Scalar want = sign > 0 ? we.basis.at(r, c) : -we.basis.at(r, c);
        if (!(BW.at(r, c) == want))
          throw Error("wedge action not diagonal in eigenbasis");
      }
      sv[r] = sign;
    }
    we.signs.push_back(sv);
  }
  return we;
}

}  // namespace hq
