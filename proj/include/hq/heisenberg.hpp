#pragma once
// The level-2 Heisenberg group (order 32), its Schrodinger representation on
// 4 coordinates, invariant polynomial subspaces, the 10 fundamental quadrics
// as character eigenlines, and the sign action on the wedge 6-space.

#include <hq/linalg.hpp>
#include <hq/numbers.hpp>
#include <hq/poly.hpp>

#include <array>
#include <cstdint>
#include <vector>

namespace hq {

// (a, b, s): translation a, character b (2 bits each, packed), sign s = +-1.
// Group law: (a,b,s)(a',b',s') = (a^a', b^b', s s' (-1)^{b.a'}).
struct HeisElement {
  uint8_t a = 0, b = 0;
  int s = 1;

  static HeisElement identity() { return {0, 0, 1}; }
  HeisElement operator*(const HeisElement& o) const;
  HeisElement inverse() const;
  bool operator==(const HeisElement& o) const {
    return a == o.a && b == o.b && s == o.s;
  }
  bool operator!=(const HeisElement& o) const { return !(*this == o); }
  std::string str() const;
};

// all 32 elements in a fixed order (a, then b, then s)
const std::vector<HeisElement>& heis_elements();

// Schrodinger representation: the phase convention
//   (U f)(x) = s (-1)^{b.(x+a)} f(x+a)
// is the one compatible with the group law above (the variant with phase
// (-1)^{b.x} represents the opposite law).  Basis labels: (z0,z1,z2,z3) =
// (d00, d01, d10, d11), index x = (x1<<1)|x2.
Mat schrodinger_matrix(const Field* f, const HeisElement& g);

// right action: f composed with U(g)^{-1}, so act(g, act(h, f)) = act(gh, f)
MultiPoly act_on_poly(const HeisElement& g, const MultiPoly& f);

// basis of the degree-d invariants, canonical echelonized form (Reynolds)
std::vector<MultiPoly> invariant_subspace(const Field* f, int d);

// a character of the abelianized group, as signs on the four generators
// T(1,0), T(0,1), C(1,0), C(0,1) (translations then sign characters)
struct QuadricLine {
  std::array<int, 4> character;
  MultiPoly quadric;  // primitive integer coefficients, first nonzero > 0
};

// simultaneous eigen-decomposition of the 10-dim quadric space
std::vector<QuadricLine> character_eigenlines(const Field* f);

struct WedgeEigen {
  Mat basis;  // 6x6 over Q, rows primitive integer: x = basis * plucker
  std::vector<HeisElement> elements;            // heis_elements() order
  std::vector<std::array<int, 6>> signs;        // diagonal of the action
};

// simultaneous eigenbasis of all wedge^2 U(g) on the Plucker 6-space;
// throws if any common eigenspace fails to be one-dimensional
WedgeEigen wedge_eigenbasis();

}  // namespace hq
