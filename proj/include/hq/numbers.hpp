// Exact field arithmetic: arbitrary-precision rationals (GMP-backed), prime
// fields F_p with p >= 5, and quadratic extensions a + b*sqrt(d) over Q or F_p.
// Every Scalar knows its field; mixing fields is an error, not a coercion.
#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace hq {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class FieldKind { rational, prime, quad };

class Scalar;
struct QuadVal;

// Immutable field descriptor.  Instances are interned and live for the whole
// process, so raw `const Field*` pointers are safe to store everywhere.
class Field {
 public:
  FieldKind kind() const { return kind_; }
  bool is_rational() const { return kind_ == FieldKind::rational; }
  bool is_prime() const { return kind_ == FieldKind::prime; }
  bool is_quad() const { return kind_ == FieldKind::quad; }

  // prime fields: the modulus.  quad over prime: base modulus.  Q: 0.
  uint64_t characteristic() const;
  uint64_t prime() const;          // prime fields only
  const Field* base() const;       // quad fields only
  const Scalar& radicand() const;  // quad fields only: d
  bool finite() const { return characteristic() != 0; }
  uint64_t order() const;  // finite fields only: p or p^2
  // radical letter used when printing quad elements: 'i' for Q(sqrt(-1)),
  // otherwise 'r'.
  char radical_name() const;
  std::string name() const;

  static const Field* Q();
  static const Field* Fp(uint64_t p);
  // d must be a non-square in base; over Q only d = -1 and d = 3 are supported.
  static const Field* quad(const Field* base, const Scalar& d);
  // convenience: F_{p^2} with the smallest non-residue as radicand
  static const Field* Fp2(uint64_t p);

 private:
  Field() = default;
  FieldKind kind_ = FieldKind::rational;
  uint64_t p_ = 0;
  const Field* base_ = nullptr;
  std::unique_ptr<Scalar> d_;
  friend struct FieldTable;
};

class Scalar {
 public:
  Scalar();  // rational zero

  static Scalar of_int(const Field* f, long v);
  static Scalar rational(long num, long den = 1);
  static Scalar rational(const mpq_class& q);
  static Scalar residue(const Field* f, uint64_t r);  // prime field
  static Scalar quad(const Field* f, const Scalar& a, const Scalar& b);

  const Field* field() const { return f_; }

  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar inv() const;
  // quad: conjugate a - b*sqrt(d); other fields: identity
  Scalar conj() const;
  // quad: a^2 - d*b^2 as an element of the base field; other fields: the
  // value itself
  Scalar norm() const;

  friend Scalar operator+(const Scalar& x, const Scalar& y);
  friend Scalar operator-(const Scalar& x, const Scalar& y);
  friend Scalar operator*(const Scalar& x, const Scalar& y);
  friend Scalar operator/(const Scalar& x, const Scalar& y);
  Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
  Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
  Scalar& operator*=(const Scalar& y) { return *this = *this * y; }
  Scalar& operator/=(const Scalar& y) { return *this = *this / y; }

  bool operator==(const Scalar& y) const;
  bool operator!=(const Scalar& y) const { return !(*this == y); }
  // total order within one field (rationals by value, residues by lift,
  // quad lexicographic); used for canonical sorting, not for math.
  bool operator<(const Scalar& y) const;

  std::string str() const;
  // parses the exact output of str() for the given field
  static Scalar parse(const Field* f, const std::string& text);

  // payload accessors (checked)
  const mpq_class& rat() const;
  uint64_t res() const;
  const Scalar& re() const;  // quad a
  const Scalar& im() const;  // quad b

  // move a value into `target` when a canonical map exists: Q -> Q,
  // Q -> F_p (reduction; error if the denominator vanishes mod p),
  // F_p -> F_p, base -> quad embedding, and Q -> quad-over-F_p via the base.
  Scalar lift_to(const Field* target) const;

  bool is_square() const;  // finite fields and rationals (exact)
  Scalar sqrt() const;     // exact square root when is_square(); error otherwise

 private:
  const Field* f_;
  std::variant<mpq_class, uint64_t, std::unique_ptr<QuadVal>> v_;

  Scalar(const Field* f, mpq_class q) : f_(f), v_(std::move(q)) {}
  Scalar(const Field* f, uint64_t r) : f_(f), v_(r) {}
  Scalar(const Field* f, std::unique_ptr<QuadVal> q) : f_(f), v_(std::move(q)) {}

 public:
  Scalar(const Scalar& o);
  Scalar(Scalar&& o) noexcept;
  Scalar& operator=(const Scalar& o);
  Scalar& operator=(Scalar&& o) noexcept;
  ~Scalar();
};

struct QuadVal {
  Scalar a, b;
};

inline Scalar::Scalar(Scalar&& o) noexcept = default;
inline Scalar& Scalar::operator=(Scalar&& o) noexcept = default;
inline Scalar::~Scalar() = default;

// modular helpers shared with the fast census kernels
uint64_t mod_pow(uint64_t base, uint64_t exp, uint64_t mod);
uint64_t mod_inv(uint64_t a, uint64_t p);
bool is_prime_u64(uint64_t p);
// smallest quadratic non-residue of F_p (p an odd prime)
uint64_t smallest_nonresidue(uint64_t p);

}  // namespace hq
