#pragma once
// The dictionary between points u of the hyperplane {Sum u = 0} in P^5 and
// invariant-quartic coefficients (A:B:C:D:E): a 5x6 rational matrix L,
// well-defined up to adding multiples of (1,...,1) to rows.  L is pinned by
// structural constraints -- the B-row anchor and V-plane slice pattern on
// the first four columns, plus the ten node -> squared-quadric incidences --
// solved per prime, rationally reconstructed, re-verified over Q, and then
// validated on gathered line/quartic samples and on the plane families.
// The coefficient-to-point inverse is moduli_point.

#include <hq/linalg.hpp>
#include <hq/numbers.hpp>
#include <hq/projective.hpp>
#include <hq/quartics.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace hq {

// diagonal entries of the line-incidence form rewritten in the wedge
// eigenbasis (it is diagonal there; throws if it is not)
std::vector<Scalar> plucker_form_diagonal();

// translation-invariant point of a line in P^5: eigenbasis coordinates of
// the Plucker vector squared coordinatewise, with the incidence diagonal
// folded in.  Constant on each 16-line translate orbit; the 32 lines on a
// smooth invariant quartic form two orbits and give two such points, both
// on the quintic.  The quartic's coefficients are NOT a linear function of
// this point: L relates them to a third point of the quintic (the class
// point recovered by moduli_point), distinct from both orbit points.
std::vector<Scalar> line_to_u_eigen(const PluckerLine& l);

// true iff the line is disjoint from its 15 nontrivial translates.  On
// honest sample lines this sees the stratum: lines of a smooth invariant
// quartic are orbit-skew, lines of a 4-nodal one meet translates in nodes.
bool heis_orbit_skew(const PluckerLine& l);

// a line together with the unique invariant quartic through it
struct DictSample {
  PluckerLine line;
  QuarticCoeffs coeffs;
};

// random honest samples over F_p: the translate-invariant point lies on
// the quintic, the quartic through the line is unique, and its singular
// census has size 0 or 4.  The census cut removes the tetrahedral classes
// (unions of four planes, census 6p-2) which pass the first two filters.
// Deduplicated by line; deterministic for fixed seed.
std::vector<DictSample> gather_samples(uint64_t p, int count, uint64_t seed);

struct DictMap {
  // row r of L gives coefficient r (order A,B,C,D,E) as a linear form in
  // u; rows are gauged to sum to zero (only the restriction to {Sum u = 0}
  // matters) and scaled so the B row is (-1,-1,1,1,0,0)/2
  Mat L{Field::Q(), 5, 6};
  // permutation applied to the eigen coordinates before L.  The structural
  // constraints single out the eigen order itself, so the fit returns the
  // identity; the slot stays because the node/square incidences, while
  // rigid, admit no coordinate-free formula that would make any other
  // labeling observable.
  std::array<int, 6> labeling{0, 1, 2, 3, 4, 5};

  std::vector<Scalar> line_to_u(const PluckerLine& l) const;
  std::string str() const;
  static DictMap parse(const std::string& text);
};

// Fit the dictionary.
//
// Stage A (structural, per prime, then CRT + rational reconstruction and
// exact re-verification over Q): with the first four columns of every row
// pinned by the slice anchor (A and E vanish on {u4=u5=0, Sum u=0}; B, C, D
// restrict to (-u0-u1+u2+u3)/2 and companions), ten unknowns remain.  The
// ten sign-pattern nodes must map to the ten squared fundamental quadrics
// in some bijection; the search runs over the 5040 assignments of four
// anchor nodes, solves each cross-multiplied affine system, and keeps the
// solutions that realize a full bijection.  Exactly two survive -- mirror
// twins under swapping the last two coordinates -- and the convention that
// (1,1,-1,-1,1,-1) maps to [z0 z1 + z2 z3]^2 picks one.
//
// Stage B (samples; >= 30 of them covering every listed prime): each
// sample's quartic must pull back under moduli_point to a point of the
// quintic, i.e. the fitted map must explain every gathered line's quartic.
//
// Errors: unsupported prime (< 5); no consistent assignment (infeasible,
// with search counts); solution count != 2 or tie-break failure (ambiguous,
// with the full solution list); rational reconstruction failure; failed
// re-verification over Q; or a stage-B witness sample.
DictMap fit_dictionary(const std::vector<DictSample>& samples,
                       const std::vector<uint64_t>& primes);

// image of a point of {Sum u = 0} under L (normalized); errors off the
// hyperplane or in the kernel slice
QuarticCoeffs apply_dictionary(const DictMap& d, const ProjPoint& u);

// the unique point u with Sum u = 0 and L u proportional to the given
// coefficients; [L; 1] is invertible over Q and modulo every prime >= 5
ProjPoint moduli_point(const DictMap& d, const QuarticCoeffs& q);

struct DictCheck {
  std::string id;
  bool ok;
  std::string expected, observed;
};
struct DictReport {
  std::vector<DictCheck> checks;
  bool all_ok() const;
};

// geometric validation at the quartic level, over Q and over each prime:
//   nodes.squares   all 10 nodes -> squared fundamental quadrics
//   vplane.f45      generic F45 points (off the S-plane / D-line walls,
//                   which is exactly fae_generic) -> singular census equal
//                   to the four coordinate poles
//   vplane.census   wall-filtered points of all 15 V-planes -> census size
//                   in {0,2,4}: four simple nodes which a Frobenius orbit
//                   may hide; at least one fully rational tetrad required
//   splane.line     generic S-plane points -> a pair of double lines: the
//                   singular locus contains a line over F_p or, when the
//                   pair is conjugate, over F_{p^2}
//   holdout         fresh honest samples: moduli point on the quintic with
//                   zero pattern (0 or 2 zeros) matching the census (0 or
//                   4 nodes), and distinct from the line's orbit point
//   vplane.spans    the 15 V-plane images are distinct rank-3 coefficient
//                   planes; F45 lands in {A=E=0}
//   dline.pencil    the D-line {u0=u4=u5=0} maps onto the desmic pencil
//                   plane {A=E=0, B+C+D=0}
//   desmic.lines    the 16 rational pencil base lines lie on a pencil (not
//                   a unique quartic), share one orbit point -- the node
//                   (1,-1,1,-1,-1,1), imaged to [z0 z2 - z1 z3]^2 -- and
//                   generic pencil members' moduli points fill the D-line
// Each failed check carries a witness in `observed`.
DictReport validate_dictionary(const DictMap& d,
                               const std::vector<uint64_t>& primes,
                               uint64_t seed = 2);

}  // namespace hq
