#pragma once
// Projective points, lines in P^3 with Plucker coordinates, enumeration over
// finite fields, and containment of a line in a hypersurface.

#include <hq/linalg.hpp>
#include <hq/numbers.hpp>
#include <hq/poly.hpp>

#include <string>
#include <vector>

namespace hq {

struct ProjPoint {
  std::vector<Scalar> c;  // normalized: first nonzero coordinate is 1

  static ProjPoint of(std::vector<Scalar> v);
  const Field* field() const { return c.at(0).field(); }
  int dim() const { return (int)c.size() - 1; }
  bool operator==(const ProjPoint& o) const { return c == o.c; }
  bool operator!=(const ProjPoint& o) const { return !(*this == o); }
  std::string str() const;  // "(1:1:1:-1)"
};

// Line in P^3. span rows are the RREF of the 2x4 matrix through the two
// defining points; plucker holds (p01,p02,p03,p23,p31,p12), normalized like
// a point of P^5 (so recomputing minors from span gives a proportional
// vector).
struct PluckerLine {
  ProjPoint a, b;           // canonical span rows
  std::vector<Scalar> pl;   // normalized Plucker 6-vector

  bool operator==(const PluckerLine& o) const { return pl == o.pl; }
  bool operator!=(const PluckerLine& o) const { return !(*this == o); }
  std::string str() const;
};

// raw minors of a 2x4 span in the fixed order (p01,p02,p03,p23,p31,p12)
std::vector<Scalar> plucker_minors(const std::vector<Scalar>& a,
                                   const std::vector<Scalar>& b);

PluckerLine plucker_of_line(const ProjPoint& p, const ProjPoint& q);

// every point of P^n over a finite Scalar field, normalized, each once
std::vector<ProjPoint> enumerate_proj_points(const Field* f, int n);

// every line of P^3 over a finite Scalar field, each once
std::vector<PluckerLine> enumerate_lines_p3(const Field* f);

// all elements of a finite Scalar field (throws over Q)
std::vector<Scalar> field_elements(const Field* f);

// true iff homogeneous f (4 variables, degree d >= 1) vanishes on the line;
// decided at d+1 distinct points of the line
bool line_in_hypersurface(const PluckerLine& l, const MultiPoly& f);

// second wedge of a 4x4 matrix acting on Plucker coordinates in the fixed
// order: plucker_minors(g a, g b) == wedge_matrix(g) * plucker_minors(a, b)
Mat wedge_matrix(const Mat& g);

}  // namespace hq
