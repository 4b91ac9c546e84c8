// Sparse multivariate polynomials over a Scalar field.  Terms are kept in
// graded-lex descending order with no zero coefficients, so equality is
// structural.  Variables are anonymous indices; the printer/parser attach a
// letter (u, x, z) purely for the debug text format.
#pragma once

#include <span>
#include <vector>

#include "hq/numbers.hpp"

namespace hq {

struct Term {
  std::vector<uint32_t> exps;
  Scalar coeff;
};

// graded lexicographic: higher total degree first, ties by lexicographically
// larger exponent vector first
int cmp_graded_lex(const std::vector<uint32_t>& a,
                   const std::vector<uint32_t>& b);

class MultiPoly {
 public:
  MultiPoly(const Field* f, int nvars) : f_(f), nvars_(nvars) {}

  static MultiPoly zero(const Field* f, int nvars) { return {f, nvars}; }
  static MultiPoly constant(const Field* f, int nvars, const Scalar& c);
  static MultiPoly variable(const Field* f, int nvars, int i);
  static MultiPoly monomial(const Field* f, std::vector<uint32_t> exps,
                            const Scalar& c);

  const Field* field() const { return f_; }
  int nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;  // -1 for the zero polynomial
  bool is_homogeneous() const;

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly operator-() const;
  MultiPoly scaled(const Scalar& c) const;
  MultiPoly pow(unsigned e) const;
  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  Scalar eval(std::span<const Scalar> point) const;
  MultiPoly partial(int i) const;
  std::vector<MultiPoly> gradient() const;
  // substitute variable i by images[i]; images share nvars/field
  MultiPoly substitute(const std::vector<MultiPoly>& images) const;
  // coefficient-wise lift/reduction (e.g. Q -> F_p)
  MultiPoly lift_to(const Field* target) const;
  // permute variables: result variable perm[i] gets old variable i
  MultiPoly permuted(const std::vector<int>& perm) const;
  Scalar coeff_of(const std::vector<uint32_t>& exps) const;

  std::string str(char letter) const;
  static MultiPoly parse(const Field* f, int nvars, char letter,
                         const std::string& text);

  // raw constructor from (possibly unsorted, duplicated) terms
  static MultiPoly from_terms(const Field* f, int nvars,
                              std::vector<Term> terms);

 private:
  const Field* f_;
  int nvars_;
  std::vector<Term> terms_;
  void normalize();
};

}  // namespace hq
