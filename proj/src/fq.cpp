#include <hq/fq.hpp>

#include <algorithm>
#include <cmath>

namespace hq {

FqCtx::FqCtx(uint64_t q) {
  uint64_t p = 0;
  int deg = 0;
  if (is_prime_u64(q)) {
    p = q;
    deg = 1;
  } else {
    uint64_t r = (uint64_t)std::llround(std::sqrt((double)q));
    for (uint64_t s = r > 2 ? r - 2 : 1; s <= r + 2; ++s)
      if (s * s == q && is_prime_u64(s)) {
        p = s;
        deg = 2;
        break;
      }
  }
  if (!p || p < 3 || p == 2) throw Error("unsupported field size " + std::to_string(q));
  if (q > (1u << 20)) throw Error("field size too large for fast context");
  p_ = (uint32_t)p;
  q_ = (uint32_t)q;
  deg_ = deg;
  nr_ = deg == 2 ? (uint32_t)smallest_nonresidue(p) : 0;
  if (q_ <= 512) {
    table_.resize((size_t)q_ * q_);
    for (uint32_t x = 0; x < q_; ++x)
      for (uint32_t y = 0; y < q_; ++y) table_[(size_t)x * q_ + y] = mul_slow(x, y);
  }
}

uint32_t FqCtx::mul_slow(uint32_t x, uint32_t y) const {
  uint64_t a1 = x % p_, b1 = x / p_, a2 = y % p_, b2 = y / p_;
  if (deg_ == 1) return (uint32_t)(a1 * a2 % p_);
  uint64_t a = (a1 * a2 + b1 * b2 % p_ * nr_) % p_;
  uint64_t b = (a1 * b2 + a2 * b1) % p_;
  return (uint32_t)(a + p_ * b);
}

uint32_t FqCtx::pow(uint32_t x, uint64_t e) const {
  uint32_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

uint32_t FqCtx::inv(uint32_t x) const {
  if (x == 0) throw Error("division by zero");
  if (deg_ == 1) return (uint32_t)mod_inv(x, p_);
  // conjugate over norm: (a - b w) / (a^2 - nr b^2)
  uint64_t a = x % p_, b = x / p_;
  uint64_t n = (a * a + (uint64_t)(p_ - 1) * nr_ % p_ * b % p_ * b) % p_;
  uint64_t ni = mod_inv(n, p_);
  uint64_t ra = a * ni % p_;
  uint64_t rb = (p_ - b % p_) % p_ * ni % p_;
  return (uint32_t)(ra + p_ * rb);
}

bool FqCtx::is_square(uint32_t x) const {
  if (x == 0) return true;
  return pow(x, (q_ - 1) / 2) == 1;
}

uint32_t FqCtx::sqrt(uint32_t x) const {
  for (uint32_t r = 0; r < q_; ++r)
    if (mul(r, r) == x) return r;
  throw Error("not a square");
}

std::string FqCtx::str(uint32_t x) const {
  if (deg_ == 1) return std::to_string(x);
  auto [a, b] = decode(x);
  return std::to_string(a) + "+" + std::to_string(b) + "w";
}

const Field* FqCtx::scalar_field() const {
  if (p_ < 5) throw Error("no Scalar field with characteristic " + std::to_string(p_));
  if (deg_ == 1) return Field::Fp(p_);
  return Field::Fp2(p_);
}

Scalar FqCtx::to_scalar(uint32_t x) const {
  const Field* f = scalar_field();
  if (deg_ == 1) return Scalar::residue(f, x % p_);
  auto [a, b] = decode(x);
  return Scalar::quad(f, Scalar::residue(f->base(), a), Scalar::residue(f->base(), b));
}

uint32_t FqCtx::from_scalar(const Scalar& s) const {
  const Field* f = s.field();
  if (deg_ == 1) {
    if (!f->is_prime() || f->prime() != p_) throw Error("scalar field mismatch");
    return (uint32_t)s.res();
  }
  if (f != scalar_field()) throw Error("scalar field mismatch");
  return encode(s.re().res(), s.im().res());
}

uint32_t FqCtx::reduce_coeff(const Scalar& s) const {
  const Field* f = s.field();
  if (f->is_rational()) {
    mpz_class num = s.rat().get_num(), den = s.rat().get_den();
    mpz_class pz((unsigned long)p_);
    mpz_class nr = num % pz, dr = den % pz;
    if (nr < 0) nr += pz;
    if (dr < 0) dr += pz;
    if (dr == 0) throw Error("denominator divisible by p");
    uint64_t n = nr.get_ui(), d = dr.get_ui();
    return (uint32_t)(n * mod_inv(d, p_) % p_);
  }
  if (f->is_prime() && f->prime() == p_) return (uint32_t)s.res();
  return from_scalar(s);
}

FqPoly FqPoly::compile(const FqCtx& C, const MultiPoly& f) {
  FqPoly out;
  out.nvars = f.nvars();
  out.degree = std::max(0, f.total_degree());
  for (const auto& t : f.terms()) {
    uint32_t c = C.reduce_coeff(t.coeff);
    if (c == 0) continue;
    out.exps.push_back(t.exps);
    out.coeffs.push_back(c);
  }
  return out;
}

uint32_t FqPoly::eval(const FqCtx& C, const uint32_t* x) const {
  // per-variable power tables up to the degree
  uint32_t pows[8][8];
  int n = nvars;
  for (int i = 0; i < n; ++i) {
    pows[i][0] = 1;
    for (int e = 1; e <= degree; ++e) pows[i][e] = C.mul(pows[i][e - 1], x[i]);
  }
  uint32_t acc = 0;
  for (size_t t = 0; t < coeffs.size(); ++t) {
    uint32_t m = coeffs[t];
    const auto& e = exps[t];
    for (int i = 0; i < n; ++i)
      if (e[i]) m = C.mul(m, pows[i][e[i]]);
    acc = C.add(acc, m);
  }
  return acc;
}

uint64_t fq_count_points(const FqCtx& C, int n) {
  uint64_t q = C.q(), total = 0, pw = 1;
  for (int i = 0; i <= n; ++i) {
    total += pw;
    pw *= q;
  }
  return total;  // (q^{n+1}-1)/(q-1)
}

uint64_t fq_count_lines(const FqCtx& C) {
  uint64_t q = C.q();
  return (q * q + 1) * (q * q + q + 1);
}

bool fq_line_in_poly(const FqCtx& C, const FqPoly& f, const FqLine& L) {
  if (f.nvars != 4) throw Error("line containment needs 4 variables");
  if (f.is_zero()) throw Error("zero polynomial rejected");
  int need = f.degree + 1;  // distinct points killing a binary form of this degree
  uint32_t pt[4];
  // point b itself (parameter value infinity)
  if (f.eval(C, L.b.data()) != 0) return false;
  for (int k = 0; k < need - 1; ++k) {
    uint32_t t = (uint32_t)k;  // packed codes 0..q-1 enumerate field elements
    if (t >= C.q()) throw Error("field too small for degree");
    for (int i = 0; i < 4; ++i) pt[i] = C.add(L.a[i], C.mul(t, L.b[i]));
    if (f.eval(C, pt) != 0) return false;
  }
  return true;
}

std::vector<FqLine> fq_lines_on_surface(const FqCtx& C, const FqPoly& f) {
  if (f.nvars != 4) throw Error("line search needs 4 variables");
  if (f.is_zero()) throw Error("zero polynomial rejected");
  if ((uint32_t)f.degree > C.q()) throw Error("field too small for degree");
  const uint32_t q = C.q();
  struct Cell {
    int pi, pj;
    std::vector<int> free0, free1;
  };
  static const std::vector<Cell> cells = {
      {0, 1, {2, 3}, {2, 3}}, {0, 2, {1, 3}, {3}}, {0, 3, {1, 2}, {}},
      {1, 2, {3}, {3}},       {1, 3, {2}, {}},     {2, 3, {}, {}}};
  std::vector<FqLine> found;
  for (const auto& cell : cells) {
    auto rows_on_surface = [&](int pivot, int zero_pivot,
                               const std::vector<int>& freexs) {
      std::vector<std::array<uint32_t, 4>> rows;
      std::vector<uint32_t> vals(freexs.size(), 0);
      for (;;) {
        std::array<uint32_t, 4> r{0, 0, 0, 0};
        r[pivot] = 1;
        for (size_t i = 0; i < freexs.size(); ++i) r[freexs[i]] = vals[i];
        (void)zero_pivot;
        if (f.eval(C, r.data()) == 0) rows.push_back(r);
        size_t i = 0;
        for (; i < vals.size(); ++i) {
          if (++vals[i] < q) break;
          vals[i] = 0;
        }
        if (i == vals.size()) break;
      }
      return rows;
    };
    auto As = rows_on_surface(cell.pi, cell.pj, cell.free0);
    auto Bs = rows_on_surface(cell.pj, cell.pi, cell.free1);
    uint32_t pt[4];
    for (const auto& a : As)
      for (const auto& b : Bs) {
        bool on = true;
        for (int k = 1; k < f.degree && on; ++k) {
          uint32_t t = (uint32_t)k;
          for (int i = 0; i < 4; ++i) pt[i] = C.add(a[i], C.mul(t, b[i]));
          if (f.eval(C, pt) != 0) on = false;
        }
        if (on) found.push_back(FqLine{a, b});
      }
  }
  return found;
}

}  // namespace hq
