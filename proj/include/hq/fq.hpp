#pragma once
// Fast arithmetic and exhaustive enumeration over small finite fields F_q,
// q = p or p^2 with p an odd prime >= 3.  Elements are packed into uint32_t
// as a + p*b, meaning a + b*w with w^2 = nr (smallest non-residue mod p).
// This layer exists for census work (point/line scans) where Scalar would be
// too slow; it bridges to Scalar whenever the matching Field exists (p >= 5).

#include <hq/numbers.hpp>
#include <hq/poly.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace hq {

class FqCtx {
 public:
  explicit FqCtx(uint64_t q);

  uint32_t p() const { return p_; }
  uint32_t q() const { return q_; }
  int deg() const { return deg_; }
  uint32_t nonresidue() const { return nr_; }

  uint32_t zero() const { return 0; }
  uint32_t one() const { return 1; }
  uint32_t encode(uint64_t a, uint64_t b = 0) const {
    return (uint32_t)(a % p_) + p_ * (uint32_t)(b % p_);
  }
  std::pair<uint32_t, uint32_t> decode(uint32_t x) const {
    return {x % p_, x / p_};
  }

  uint32_t add(uint32_t x, uint32_t y) const {
    uint32_t a = x % p_ + y % p_, b = x / p_ + y / p_;
    if (a >= p_) a -= p_;
    if (b >= p_) b -= p_;
    return a + p_ * b;
  }
  uint32_t neg(uint32_t x) const {
    uint32_t a = x % p_, b = x / p_;
    return (a ? p_ - a : 0) + p_ * (b ? p_ - b : 0);
  }
  uint32_t sub(uint32_t x, uint32_t y) const { return add(x, neg(y)); }
  uint32_t mul(uint32_t x, uint32_t y) const {
    if (table_.empty()) return mul_slow(x, y);
    return table_[(size_t)x * q_ + y];
  }
  uint32_t inv(uint32_t x) const;
  uint32_t pow(uint32_t x, uint64_t e) const;
  bool is_square(uint32_t x) const;  // true for 0 and nonzero squares
  uint32_t sqrt(uint32_t x) const;   // throws if not a square

  std::string str(uint32_t x) const;

  // Scalar bridge; throws when no Scalar field exists (p < 5).
  const Field* scalar_field() const;
  Scalar to_scalar(uint32_t x) const;
  uint32_t from_scalar(const Scalar& s) const;
  // reduce a coefficient given over Q or over F_p itself
  uint32_t reduce_coeff(const Scalar& s) const;

 private:
  uint32_t mul_slow(uint32_t x, uint32_t y) const;
  uint32_t p_, q_, nr_;
  int deg_;
  std::vector<uint32_t> table_;  // q*q multiplication table when q small
};

// Compiled polynomial for fast evaluation; terms mirror MultiPoly layout.
struct FqPoly {
  int nvars = 0;
  int degree = 0;
  std::vector<std::vector<uint32_t>> exps;
  std::vector<uint32_t> coeffs;

  // f must be over Q or over F_p with p == C.p()
  static FqPoly compile(const FqCtx& C, const MultiPoly& f);
  uint32_t eval(const FqCtx& C, const uint32_t* x) const;
  bool is_zero() const { return coeffs.empty(); }
};

// All points of P^n(F_q), normalized (first nonzero coordinate = 1).
// cb receives a pointer to n+1 packed coordinates.
template <class F>
void fq_enumerate_points(const FqCtx& C, int n, F&& cb) {
  std::vector<uint32_t> x((size_t)n + 1, 0);
  for (int lead = n; lead >= 0; --lead) {
    std::fill(x.begin(), x.end(), 0u);
    x[lead] = 1;
    // odometer over coordinates lead+1 .. n
    for (;;) {
      cb(x.data());
      int i = n;
      for (; i > lead; --i) {
        uint32_t nx = x[i] + 1;
        // iterate packed codes 0..q-1 (all field elements)
        if (nx < C.q()) {
          x[i] = nx;
          break;
        }
        x[i] = 0;
      }
      if (i == lead) break;
    }
  }
}

uint64_t fq_count_points(const FqCtx& C, int n);

// A line of P^3(F_q) in reduced row echelon span form.
struct FqLine {
  std::array<uint32_t, 4> a, b;  // the two RREF rows
};

// Schubert-cell enumeration: every line exactly once, as RREF spans.
// Cells by pivot columns: (0,1) q^4, (0,2) q^3, (0,3) q^2, (1,2) q^2,
// (1,3) q, (2,3) 1; total (q^2+1)(q^2+q+1).
template <class F>
void fq_enumerate_lines(const FqCtx& C, F&& cb) {
  const uint32_t q = C.q();
  auto emit = [&](std::array<uint32_t, 4> r0, std::array<uint32_t, 4> r1) {
    cb(FqLine{r0, r1});
  };
  for (uint32_t s = 0; s < q; ++s)
    for (uint32_t t = 0; t < q; ++t)
      for (uint32_t u = 0; u < q; ++u)
        for (uint32_t v = 0; v < q; ++v) emit({1, 0, s, t}, {0, 1, u, v});
  for (uint32_t s = 0; s < q; ++s)
    for (uint32_t t = 0; t < q; ++t)
      for (uint32_t u = 0; u < q; ++u) emit({1, s, 0, t}, {0, 0, 1, u});
  for (uint32_t s = 0; s < q; ++s)
    for (uint32_t t = 0; t < q; ++t) emit({1, s, t, 0}, {0, 0, 0, 1});
  for (uint32_t s = 0; s < q; ++s)
    for (uint32_t t = 0; t < q; ++t) emit({0, 1, 0, s}, {0, 0, 1, t});
  for (uint32_t s = 0; s < q; ++s) emit({0, 1, s, 0}, {0, 0, 0, 1});
  emit({0, 0, 1, 0}, {0, 0, 0, 1});
}

uint64_t fq_count_lines(const FqCtx& C);

// True iff the degree-d form f vanishes identically on L, decided by
// evaluating at d+1 distinct points of the line with early exit.
bool fq_line_in_poly(const FqCtx& C, const FqPoly& f, const FqLine& L);

// All lines contained in f = 0, in Schubert-cell order.  Filters each cell
// by requiring both RREF rows to be surface points before testing the
// remaining d-1 parameter values, so the work is ~q^2 instead of q^4.
std::vector<FqLine> fq_lines_on_surface(const FqCtx& C, const FqPoly& f);

}  // namespace hq
