#pragma once
// Invariant quartic surfaces in coefficient form (A:B:C:D:E) on the basis
// q0..q4, the desmic pencil with its nodes / 16 common lines / incidence
// table, singular-point and lines-on-surface censuses over F_q, the
// quartic-through-a-line solve, and squared-quadric detection.

#include <hq/fq.hpp>
#include <hq/heisenberg.hpp>
#include <hq/projective.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace hq {

// q0 = sum z_i^4, q1 = z0^2 z1^2 + z2^2 z3^2, q2 = z0^2 z2^2 + z1^2 z3^2,
// q3 = z0^2 z3^2 + z1^2 z2^2, q4 = z0 z1 z2 z3
std::vector<MultiPoly> q_basis(const Field* f);

struct QuarticCoeffs {
  std::array<Scalar, 5> c;  // (A, B, C, D, E), projective

  const Field* field() const { return c[0].field(); }
  MultiPoly to_poly() const;
  // normalized like a point of P^4 (first nonzero = 1)
  QuarticCoeffs normalized() const;
  bool proportional_to(const QuarticCoeffs& o) const;
  std::string str() const;
};

// coefficients of a quartic already known to be invariant (exact expansion
// on the q-basis; throws if f is not in the span)
QuarticCoeffs coeffs_of_invariant(const MultiPoly& f);

struct Desmic {
  QuarticCoeffs coeffs;  // (0, C-D, -C, D, 0)
  MultiPoly poly;        // C (z0^2-z3^2)(z1^2-z2^2) + D (z0^2-z2^2)(z3^2-z1^2)
};
Desmic desmic_quartic(const Scalar& C, const Scalar& D);

// the 12 desmic singular points: 4 poles then 4 even, 4 odd cube vertices
struct DesmicNodes {
  std::vector<ProjPoint> poles, even, odd;
};
DesmicNodes desmic_nodes(const Field* f);

// the 16 pencil lines: z_i free, z_j = eps_j elsewhere
std::vector<PluckerLine> desmic_lines(const Field* f);

// exhaustive scan of P^3(F_q): points with grad f = 0 (and f = 0), packed
std::vector<std::vector<uint32_t>> singular_points(const MultiPoly& f,
                                                   uint64_t q);

struct LinesCensus {
  uint64_t q = 0;
  std::vector<FqLine> lines;
};
LinesCensus lines_census(const MultiPoly& f, uint64_t q);

struct QuarticThroughLine {
  enum Kind { none, unique, non_unique } kind = none;
  size_t kernel_dim = 0;
  std::optional<QuarticCoeffs> coeffs;  // set when unique
};
QuarticThroughLine quartic_through_line(const PluckerLine& l);

struct ReyeRow {
  PluckerLine line;
  ProjPoint pole, even, odd;
};
// for each of the 16 lines: the singular points on it, validated to be
// exactly one pole, one even vertex, one odd vertex
std::vector<ReyeRow> reye_incidence(const Scalar& C, const Scalar& D);

// the quadric Q with to_poly proportional to Q^2, if any
std::optional<MultiPoly> is_fundamental_square(const QuarticCoeffs& f);

// genericity predicate for F_AE samples: BCD != 0 and B +- C +- D != 0
bool fae_generic(const Scalar& B, const Scalar& C, const Scalar& D);

}  // namespace hq
