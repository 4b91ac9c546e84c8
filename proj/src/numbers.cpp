#include "hq/numbers.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace hq {

// ---------------------------------------------------------------- utilities

uint64_t mod_pow(uint64_t base, uint64_t exp, uint64_t mod) {
  uint64_t r = 1 % mod;
  base %= mod;
  while (exp) {
    if (exp & 1) r = (unsigned __int128)r * base % mod;
    base = (unsigned __int128)base * base % mod;
    exp >>= 1;
  }
  return r;
}

uint64_t mod_inv(uint64_t a, uint64_t p) {
  a %= p;
  if (a == 0) throw Error("division by zero mod " + std::to_string(p));
  // extended euclid on (p, a)
  int64_t t = 0, nt = 1;
  int64_t r = (int64_t)p, nr = (int64_t)a;
  while (nr != 0) {
    int64_t q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (r != 1) throw Error("modulus not prime in mod_inv");
  if (t < 0) t += (int64_t)p;
  return (uint64_t)t;
}

bool is_prime_u64(uint64_t p) {
  if (p < 2) return false;
  for (uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

uint64_t smallest_nonresidue(uint64_t p) {
  for (uint64_t d = 2; d < p; ++d)
    if (mod_pow(d, (p - 1) / 2, p) == p - 1) return d;
  throw Error("no non-residue found (p not an odd prime?)");
}

// ------------------------------------------------------------------- Field

// interning tables; leaked on purpose (process-lifetime descriptors)
struct FieldTable {
  std::mutex mu;
  Field rationals;
  std::map<uint64_t, Field*> primes;
  std::map<std::pair<const Field*, std::string>, Field*> quads;

  FieldTable() { rationals.kind_ = FieldKind::rational; }

  static FieldTable& get() {
    static FieldTable* t = new FieldTable;
    return *t;
  }

  Field* fp(uint64_t p) {
    std::lock_guard<std::mutex> lk(mu);
    auto it = primes.find(p);
    if (it != primes.end()) return it->second;
    if (p < 5) throw Error("prime field requires p >= 5, got " + std::to_string(p));
    if (p > (1ull << 31)) throw Error("prime too large");
    if (!is_prime_u64(p)) throw Error("modulus " + std::to_string(p) + " is not prime");
    Field* f = new Field;
    f->kind_ = FieldKind::prime;
    f->p_ = p;
    primes[p] = f;
    return f;
  }

  Field* quad(const Field* base, const Scalar& d) {
    if (base->is_quad()) throw Error("quadratic towers not supported");
    if (d.field() != base) throw Error("radicand not in base field");
    if (d.is_zero()) throw Error("radicand must be nonzero");
    if (base->is_rational()) {
      mpq_class v = d.rat();
      if (!(v == -1 || v == 3))
        throw Error("QuadExt over Q supports only d = -1 or d = 3");
    } else {
      // Euler criterion: reject squares
      uint64_t p = base->prime();
      if (mod_pow(d.res(), (p - 1) / 2, p) != p - 1)
        throw Error("d is a square in F_" + std::to_string(p));
    }
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(base, d.str());
    auto it = quads.find(key);
    if (it != quads.end()) return it->second;
    Field* f = new Field;
    f->kind_ = FieldKind::quad;
    f->base_ = base;
    f->p_ = base->characteristic();
    f->d_ = std::make_unique<Scalar>(d);
    quads[key] = f;
    return f;
  }
};

uint64_t Field::characteristic() const { return p_; }

uint64_t Field::prime() const {
  if (!is_prime()) throw Error("prime() on non-prime field " + name());
  return p_;
}

const Field* Field::base() const {
  if (!is_quad()) throw Error("base() on non-quad field " + name());
  return base_;
}

const Scalar& Field::radicand() const {
  if (!is_quad()) throw Error("radicand() on non-quad field " + name());
  return *d_;
}

uint64_t Field::order() const {
  if (is_prime()) return p_;
  if (is_quad() && base_->is_prime()) return p_ * p_;
  throw Error("order() on infinite field " + name());
}

char Field::radical_name() const {
  if (!is_quad()) throw Error("radical_name() on non-quad field");
  if (base_->is_rational() && d_->rat() == -1) return 'i';
  return 'r';
}

std::string Field::name() const {
  switch (kind_) {
    case FieldKind::rational:
      return "Q";
    case FieldKind::prime:
      return "F_" + std::to_string(p_);
    case FieldKind::quad:
      if (base_->is_rational())
        return d_->rat() == -1 ? "Q(i)" : "Q(sqrt" + d_->str() + ")";
      return "F_" + std::to_string(p_ * p_);
  }
  return "?";
}

const Field* Field::Q() { return &FieldTable::get().rationals; }
const Field* Field::Fp(uint64_t p) { return FieldTable::get().fp(p); }
const Field* Field::quad(const Field* base, const Scalar& d) {
  return FieldTable::get().quad(base, d);
}
const Field* Field::Fp2(uint64_t p) {
  const Field* base = Fp(p);
  return quad(base, Scalar::residue(base, smallest_nonresidue(p)));
}

// ------------------------------------------------------------------ Scalar

Scalar::Scalar() : f_(Field::Q()), v_(mpq_class(0)) {}

Scalar::Scalar(const Scalar& o) : f_(o.f_) {
  if (auto* q = std::get_if<mpq_class>(&o.v_))
    v_ = *q;
  else if (auto* r = std::get_if<uint64_t>(&o.v_))
    v_ = *r;
  else
    v_ = std::make_unique<QuadVal>(*std::get<std::unique_ptr<QuadVal>>(o.v_));
}

Scalar& Scalar::operator=(const Scalar& o) {
  if (this != &o) *this = Scalar(o);
  return *this;
}

Scalar Scalar::of_int(const Field* f, long v) {
  switch (f->kind()) {
    case FieldKind::rational:
      return Scalar(f, mpq_class(v));
    case FieldKind::prime: {
      int64_t m = (int64_t)f->prime();
      int64_t r = (int64_t)(v % m);
      if (r < 0) r += m;
      return Scalar(f, (uint64_t)r);
    }
    case FieldKind::quad:
      return quad(f, of_int(f->base(), v), of_int(f->base(), 0));
  }
  throw Error("bad field");
}

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw Error("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(Field::Q(), std::move(q));
}

Scalar Scalar::rational(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  return Scalar(Field::Q(), std::move(c));
}

Scalar Scalar::residue(const Field* f, uint64_t r) {
  if (!f->is_prime()) throw Error("residue() needs a prime field");
  return Scalar(f, r % f->prime());
}

Scalar Scalar::quad(const Field* f, const Scalar& a, const Scalar& b) {
  if (!f->is_quad()) throw Error("quad() needs a quadratic field");
  if (a.field() != f->base() || b.field() != f->base())
    throw Error("quad parts not in base field");
  return Scalar(f, std::make_unique<QuadVal>(QuadVal{a, b}));
}

const mpq_class& Scalar::rat() const {
  if (auto* q = std::get_if<mpq_class>(&v_)) return *q;
  throw Error("not a rational");
}

uint64_t Scalar::res() const {
  if (auto* r = std::get_if<uint64_t>(&v_)) return *r;
  throw Error("not a prime-field element");
}

const Scalar& Scalar::re() const {
  if (auto* q = std::get_if<std::unique_ptr<QuadVal>>(&v_)) return (*q)->a;
  throw Error("not a quad element");
}

const Scalar& Scalar::im() const {
  if (auto* q = std::get_if<std::unique_ptr<QuadVal>>(&v_)) return (*q)->b;
  throw Error("not a quad element");
}

bool Scalar::is_zero() const {
  switch (f_->kind()) {
    case FieldKind::rational:
      return rat() == 0;
    case FieldKind::prime:
      return res() == 0;
    case FieldKind::quad:
      return re().is_zero() && im().is_zero();
  }
  return false;
}

bool Scalar::is_one() const {
  switch (f_->kind()) {
    case FieldKind::rational:
      return rat() == 1;
    case FieldKind::prime:
      return res() == 1;
    case FieldKind::quad:
      return re().is_one() && im().is_zero();
  }
  return false;
}

static void check_same_field(const Scalar& x, const Scalar& y) {
  if (x.field() != y.field())
    throw Error("field mismatch: " + x.field()->name() + " vs " +
                y.field()->name());
}

Scalar Scalar::operator-() const {
  switch (f_->kind()) {
    case FieldKind::rational:
      return Scalar(f_, mpq_class(-rat()));
    case FieldKind::prime:
      return Scalar(f_, res() == 0 ? 0 : f_->prime() - res());
    case FieldKind::quad:
      return quad(f_, -re(), -im());
  }
  throw Error("bad field");
}

Scalar operator+(const Scalar& x, const Scalar& y) {
  check_same_field(x, y);
  switch (x.f_->kind()) {
    case FieldKind::rational:
      return Scalar(x.f_, mpq_class(x.rat() + y.rat()));
    case FieldKind::prime: {
      uint64_t s = x.res() + y.res();
      uint64_t p = x.f_->prime();
      return Scalar(x.f_, s >= p ? s - p : s);
    }
    case FieldKind::quad:
      return Scalar::quad(x.f_, x.re() + y.re(), x.im() + y.im());
  }
  throw Error("bad field");
}

Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }

Scalar operator*(const Scalar& x, const Scalar& y) {
  check_same_field(x, y);
  switch (x.f_->kind()) {
    case FieldKind::rational:
      return Scalar(x.f_, mpq_class(x.rat() * y.rat()));
    case FieldKind::prime:
      return Scalar(x.f_, (uint64_t)((unsigned __int128)x.res() * y.res() %
                                     x.f_->prime()));
    case FieldKind::quad: {
      // (a + b r)(a' + b' r) = aa' + bb' d + (ab' + a'b) r
      const Scalar& d = x.f_->radicand();
      return Scalar::quad(x.f_, x.re() * y.re() + x.im() * y.im() * d,
                          x.re() * y.im() + x.im() * y.re());
    }
  }
  throw Error("bad field");
}

Scalar Scalar::inv() const {
  if (is_zero()) throw Error("division by zero in " + f_->name());
  switch (f_->kind()) {
    case FieldKind::rational:
      return Scalar(f_, mpq_class(1 / rat()));
    case FieldKind::prime:
      return Scalar(f_, mod_inv(res(), f_->prime()));
    case FieldKind::quad: {
      // 1/(a+br) = (a-br)/(a^2 - d b^2); norm is nonzero since d is a
      // non-square
      Scalar n = norm();
      Scalar ninv = n.inv();
      return quad(f_, re() * ninv, -(im() * ninv));
    }
  }
  throw Error("bad field");
}

Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inv(); }

Scalar Scalar::conj() const {
  if (!f_->is_quad()) return *this;
  return quad(f_, re(), -im());
}

Scalar Scalar::norm() const {
  if (!f_->is_quad()) return *this;
  return re() * re() - f_->radicand() * (im() * im());
}

bool Scalar::operator==(const Scalar& y) const {
  check_same_field(*this, y);
  switch (f_->kind()) {
    case FieldKind::rational:
      return rat() == y.rat();
    case FieldKind::prime:
      return res() == y.res();
    case FieldKind::quad:
      return re() == y.re() && im() == y.im();
  }
  return false;
}

bool Scalar::operator<(const Scalar& y) const {
  check_same_field(*this, y);
  switch (f_->kind()) {
    case FieldKind::rational:
      return rat() < y.rat();
    case FieldKind::prime:
      return res() < y.res();
    case FieldKind::quad:
      if (re() != y.re()) return re() < y.re();
      return im() < y.im();
  }
  return false;
}

std::string Scalar::str() const {
  switch (f_->kind()) {
    case FieldKind::rational:
      return rat().get_str();
    case FieldKind::prime:
      return std::to_string(res());
    case FieldKind::quad: {
      std::string rn(1, f_->radical_name());
      // b rendered with explicit sign so the format is unambiguous
      std::string bs = im().str();
      std::string sign = "+";
      if (!bs.empty() && bs[0] == '-') {
        sign = "-";
        bs = bs.substr(1);
      }
      return "(" + re().str() + sign + bs + "*" + rn + ")";
    }
  }
  throw Error("bad field");
}

Scalar Scalar::parse(const Field* f, const std::string& text) {
  switch (f->kind()) {
    case FieldKind::rational:
      try {
        std::string t = (!text.empty() && text[0] == '+') ? text.substr(1) : text;
        return rational(mpq_class(t));
      } catch (const std::invalid_argument&) {
        throw Error("bad rational literal: " + text);
      }
    case FieldKind::prime: {
      if (text.empty()) throw Error("empty residue literal");
      size_t i = 0;
      bool neg = text[0] == '-';
      if (neg || text[0] == '+') i = 1;
      uint64_t v = 0;
      for (; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9')
          throw Error("bad residue literal: " + text);
        v = v * 10 + (uint64_t)(text[i] - '0');
        v %= f->prime();
      }
      Scalar s = residue(f, v);
      return neg ? -s : s;
    }
    case FieldKind::quad: {
      if (text.size() < 2 || text.front() != '(' || text.back() != ')')
        throw Error("bad quad literal: " + text);
      std::string body = text.substr(1, text.size() - 2);
      // first top-level +/- at index >= 1 separates a from b
      size_t sep = std::string::npos;
      for (size_t i = 1; i < body.size(); ++i)
        if (body[i] == '+' || body[i] == '-') {
          sep = i;
          break;
        }
      if (sep == std::string::npos) throw Error("bad quad literal: " + text);
      std::string astr = body.substr(0, sep);
      std::string rest = body.substr(sep);  // includes sign
      std::string suffix =
          std::string("*") + std::string(1, f->radical_name());
      if (rest.size() < suffix.size() ||
          rest.substr(rest.size() - suffix.size()) != suffix)
        throw Error("bad quad literal: " + text);
      std::string bstr = rest.substr(0, rest.size() - suffix.size());
      if (bstr == "+" || bstr == "-") bstr += "1";
      return quad(f, parse(f->base(), astr), parse(f->base(), bstr));
    }
  }
  throw Error("bad field");
}

Scalar Scalar::lift_to(const Field* target) const {
  if (target == f_) return *this;
  switch (target->kind()) {
    case FieldKind::rational:
      if (f_->is_rational()) return *this;
      throw Error("no canonical map " + f_->name() + " -> Q");
    case FieldKind::prime: {
      if (!f_->is_rational())
        throw Error("no canonical map " + f_->name() + " -> " + target->name());
      uint64_t p = target->prime();
      mpz_class num = rat().get_num(), den = rat().get_den();
      mpz_class pz((unsigned long)p);
      mpz_class nr = num % pz, dr = den % pz;
      if (nr < 0) nr += pz;
      if (dr == 0) throw Error("denominator vanishes mod " + std::to_string(p));
      uint64_t n = nr.get_ui(), d = dr.get_ui();
      return residue(target, (unsigned __int128)n * mod_inv(d, p) % p);
    }
    case FieldKind::quad: {
      const Field* b = target->base();
      Scalar a = lift_to(b);  // recursion handles Q->F_p and identity
      return quad(target, a, of_int(b, 0));
    }
  }
  throw Error("bad field");
}

bool Scalar::is_square() const {
  if (is_zero()) return true;
  switch (f_->kind()) {
    case FieldKind::rational: {
      if (rat() < 0) return false;
      mpz_class n = rat().get_num(), d = rat().get_den();
      return mpz_perfect_square_p(n.get_mpz_t()) &&
             mpz_perfect_square_p(d.get_mpz_t());
    }
    case FieldKind::prime:
      return mod_pow(res(), (f_->prime() - 1) / 2, f_->prime()) == 1;
    case FieldKind::quad: {
      if (!f_->base()->is_prime())
        throw Error("is_square unsupported over " + f_->name());
      // x in F_{p^2} is a square iff x^((q-1)/2) = 1
      uint64_t q = f_->order();
      Scalar acc = of_int(f_, 1);
      Scalar b = *this;
      uint64_t e = (q - 1) / 2;
      while (e) {
        if (e & 1) acc = acc * b;
        b = b * b;
        e >>= 1;
      }
      return acc.is_one();
    }
  }
  return false;
}

Scalar Scalar::sqrt() const {
  if (is_zero()) return *this;
  if (!is_square()) throw Error("not a square in " + f_->name());
  switch (f_->kind()) {
    case FieldKind::rational: {
      mpz_class n = rat().get_num(), d = rat().get_den();
      mpz_class rn, rd;
      mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
      mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
      return rational(mpq_class(rn, rd));
    }
    case FieldKind::prime: {
      // p is small here; scan (censuses use the fast kernels, not this)
      uint64_t p = f_->prime();
      for (uint64_t x = 1; x <= p / 2; ++x)
        if ((unsigned __int128)x * x % p == res()) return residue(f_, x);
      throw Error("sqrt scan failed");
    }
    case FieldKind::quad: {
      if (!f_->base()->is_prime())
        throw Error("sqrt unsupported over " + f_->name());
      uint64_t p = f_->base()->prime();
      // brute scan over F_{p^2}; fine for the small p used in censuses
      for (uint64_t a = 0; a < p; ++a)
        for (uint64_t b = 0; b < p; ++b) {
          Scalar x = quad(f_, residue(f_->base(), a), residue(f_->base(), b));
          if (x * x == *this) return x;
        }
      throw Error("sqrt scan failed");
    }
  }
  throw Error("bad field");
}

}  // namespace hq
