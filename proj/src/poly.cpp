#include "hq/poly.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace hq {

int cmp_graded_lex(const std::vector<uint32_t>& a,
                   const std::vector<uint32_t>& b) {
  uint64_t da = std::accumulate(a.begin(), a.end(), (uint64_t)0);
  uint64_t db = std::accumulate(b.begin(), b.end(), (uint64_t)0);
  if (da != db) return da < db ? -1 : 1;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

void MultiPoly::normalize() {
  for (auto& t : terms_)
    if ((int)t.exps.size() != nvars_) throw Error("term arity mismatch");
  std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) {
    return cmp_graded_lex(x.exps, y.exps) > 0;
  });
  std::vector<Term> out;
  for (auto& t : terms_) {
    if (!out.empty() && out.back().exps == t.exps)
      out.back().coeff += t.coeff;
    else
      out.push_back(std::move(t));
    if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
  }
  terms_ = std::move(out);
}

MultiPoly MultiPoly::from_terms(const Field* f, int nvars,
                                std::vector<Term> terms) {
  MultiPoly p(f, nvars);
  for (auto& t : terms)
    if (t.coeff.field() != f) throw Error("coefficient field mismatch");
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

MultiPoly MultiPoly::constant(const Field* f, int nvars, const Scalar& c) {
  return from_terms(f, nvars, {{std::vector<uint32_t>(nvars, 0), c}});
}

MultiPoly MultiPoly::variable(const Field* f, int nvars, int i) {
  std::vector<uint32_t> e(nvars, 0);
  e.at(i) = 1;
  return from_terms(f, nvars, {{std::move(e), Scalar::of_int(f, 1)}});
}

MultiPoly MultiPoly::monomial(const Field* f, std::vector<uint32_t> exps,
                              const Scalar& c) {
  int n = (int)exps.size();
  return from_terms(f, n, {{std::move(exps), c}});
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  // first term has maximal degree under graded order
  return (int)std::accumulate(terms_[0].exps.begin(), terms_[0].exps.end(),
                              (uint64_t)0);
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  uint64_t d = std::accumulate(terms_[0].exps.begin(), terms_[0].exps.end(),
                               (uint64_t)0);
  for (const auto& t : terms_)
    if (std::accumulate(t.exps.begin(), t.exps.end(), (uint64_t)0) != d)
      return false;
  return true;
}

static void check_compatible(const MultiPoly& a, const MultiPoly& b) {
  if (a.field() != b.field()) throw Error("polynomial field mismatch");
  if (a.nvars() != b.nvars()) throw Error("polynomial arity mismatch");
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  check_compatible(a, b);
  std::vector<Term> ts = a.terms_;
  ts.insert(ts.end(), b.terms_.begin(), b.terms_.end());
  return MultiPoly::from_terms(a.f_, a.nvars_, std::move(ts));
}

MultiPoly MultiPoly::operator-() const { return scaled(Scalar::of_int(f_, -1)); }

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

MultiPoly MultiPoly::scaled(const Scalar& c) const {
  if (c.field() != f_) throw Error("scalar field mismatch");
  std::vector<Term> ts;
  ts.reserve(terms_.size());
  for (const auto& t : terms_) ts.push_back({t.exps, t.coeff * c});
  return from_terms(f_, nvars_, std::move(ts));
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  check_compatible(a, b);
  std::vector<Term> ts;
  ts.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) {
      std::vector<uint32_t> e(a.nvars_);
      for (int i = 0; i < a.nvars_; ++i) e[i] = x.exps[i] + y.exps[i];
      ts.push_back({std::move(e), x.coeff * y.coeff});
    }
  return MultiPoly::from_terms(a.f_, a.nvars_, std::move(ts));
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly r = constant(f_, nvars_, Scalar::of_int(f_, 1));
  MultiPoly b = *this;
  while (e) {
    if (e & 1) r = r * b;
    if (e >>= 1) b = b * b;
  }
  return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  if (f_ != o.f_ || nvars_ != o.nvars_ || terms_.size() != o.terms_.size())
    return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].exps != o.terms_[i].exps ||
        terms_[i].coeff != o.terms_[i].coeff)
      return false;
  return true;
}

Scalar MultiPoly::eval(std::span<const Scalar> point) const {
  if ((int)point.size() != nvars_) throw Error("point length mismatch");
  for (const auto& s : point)
    if (s.field() != f_) throw Error("point field mismatch");
  Scalar acc = Scalar::of_int(f_, 0);
  for (const auto& t : terms_) {
    Scalar v = t.coeff;
    for (int i = 0; i < nvars_; ++i) {
      for (uint32_t e = 0; e < t.exps[i]; ++e) v = v * point[i];
    }
    acc = acc + v;
  }
  return acc;
}

MultiPoly MultiPoly::partial(int i) const {
  std::vector<Term> ts;
  for (const auto& t : terms_) {
    if (t.exps[i] == 0) continue;
    std::vector<uint32_t> e = t.exps;
    Scalar c = t.coeff * Scalar::of_int(f_, (long)e[i]);
    e[i] -= 1;
    ts.push_back({std::move(e), std::move(c)});
  }
  return from_terms(f_, nvars_, std::move(ts));
}

std::vector<MultiPoly> MultiPoly::gradient() const {
  std::vector<MultiPoly> g;
  g.reserve(nvars_);
  for (int i = 0; i < nvars_; ++i) g.push_back(partial(i));
  return g;
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& images) const {
  if ((int)images.size() != nvars_) throw Error("substitution arity mismatch");
  for (const auto& im : images)
    if (im.field() != f_) throw Error("substitution field mismatch");
  int out_nvars = images.empty() ? 0 : images[0].nvars();
  for (const auto& im : images)
    if (im.nvars() != out_nvars) throw Error("substitution images disagree");
  // cache powers of each image
  std::vector<std::vector<MultiPoly>> pows(nvars_);
  for (int i = 0; i < nvars_; ++i)
    pows[i].push_back(constant(f_, out_nvars, Scalar::of_int(f_, 1)));
  MultiPoly acc = zero(f_, out_nvars);
  for (const auto& t : terms_) {
    MultiPoly m = constant(f_, out_nvars, t.coeff);
    for (int i = 0; i < nvars_; ++i) {
      while (pows[i].size() <= t.exps[i])
        pows[i].push_back(pows[i].back() * images[i]);
      if (t.exps[i] > 0) m = m * pows[i][t.exps[i]];
    }
    acc = acc + m;
  }
  return acc;
}

MultiPoly MultiPoly::lift_to(const Field* target) const {
  std::vector<Term> ts;
  ts.reserve(terms_.size());
  for (const auto& t : terms_) ts.push_back({t.exps, t.coeff.lift_to(target)});
  return from_terms(target, nvars_, std::move(ts));
}

MultiPoly MultiPoly::permuted(const std::vector<int>& perm) const {
  if ((int)perm.size() != nvars_) throw Error("permutation arity mismatch");
  std::vector<Term> ts;
  ts.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::vector<uint32_t> e(nvars_, 0);
    for (int i = 0; i < nvars_; ++i) e.at(perm[i]) = t.exps[i];
    ts.push_back({std::move(e), t.coeff});
  }
  return from_terms(f_, nvars_, std::move(ts));
}

Scalar MultiPoly::coeff_of(const std::vector<uint32_t>& exps) const {
  for (const auto& t : terms_)
    if (t.exps == exps) return t.coeff;
  return Scalar::of_int(f_, 0);
}

// ------------------------------------------------------------ text format

std::string MultiPoly::str(char letter) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    std::string cs = t.coeff.str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (first) {
      if (neg) {
        out += "-";
        cs = cs.substr(1);
      }
    } else {
      if (neg) {
        out += " - ";
        cs = cs.substr(1);
      } else {
        out += " + ";
      }
    }
    first = false;
    out += cs;
    for (int i = 0; i < nvars_; ++i)
      if (t.exps[i] > 0)
        out += "*" + std::string(1, letter) + std::to_string(i) + "^" +
               std::to_string(t.exps[i]);
  }
  return out;
}

MultiPoly MultiPoly::parse(const Field* f, int nvars, char letter,
                           const std::string& text) {
  if (text == "0") return zero(f, nvars);
  // split into signed term strings on top-level " + " / " - "
  std::vector<std::pair<int, std::string>> raw;  // sign, body
  size_t i = 0;
  int sign = 1;
  if (!text.empty() && text[0] == '-') {
    sign = -1;
    i = 1;
  }
  size_t start = i;
  int depth = 0;
  auto flush = [&](size_t end) {
    raw.emplace_back(sign, text.substr(start, end - start));
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '(') depth++;
    if (c == ')') depth--;
    if (depth == 0 && c == ' ' && i + 2 < text.size() &&
        (text[i + 1] == '+' || text[i + 1] == '-') && text[i + 2] == ' ') {
      flush(i);
      sign = text[i + 1] == '+' ? 1 : -1;
      i += 3;
      start = i;
      continue;
    }
    ++i;
  }
  flush(text.size());

  std::vector<Term> ts;
  for (auto& [sg, body] : raw) {
    // split factors on top-level '*'
    std::vector<std::string> factors;
    size_t s = 0;
    int d = 0;
    for (size_t k = 0; k <= body.size(); ++k) {
      if (k < body.size() && body[k] == '(') d++;
      if (k < body.size() && body[k] == ')') d--;
      if (k == body.size() || (body[k] == '*' && d == 0)) {
        factors.push_back(body.substr(s, k - s));
        s = k + 1;
      }
    }
    // a quad coefficient "(a+b*r)" was split at its inner '*' only if
    // unparenthesized; parens protect it, so factors are clean here
    Scalar coeff = Scalar::of_int(f, 1);
    std::vector<uint32_t> exps(nvars, 0);
    bool have_coeff = false;
    for (const auto& fac : factors) {
      if (fac.empty()) throw Error("bad term: " + body);
      if (fac[0] == letter) {
        size_t caret = fac.find('^');
        if (caret == std::string::npos)
          throw Error("missing exponent in " + fac);
        int vi = std::stoi(fac.substr(1, caret - 1));
        if (vi < 0 || vi >= nvars) throw Error("variable out of range: " + fac);
        exps[vi] += (uint32_t)std::stoul(fac.substr(caret + 1));
      } else {
        if (have_coeff) throw Error("two coefficients in " + body);
        coeff = Scalar::parse(f, fac);
        have_coeff = true;
      }
    }
    if (sg < 0) coeff = -coeff;
    ts.push_back({std::move(exps), std::move(coeff)});
  }
  return from_terms(f, nvars, std::move(ts));
}

}  // namespace hq
