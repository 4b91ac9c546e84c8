#pragma once
// The quintic N in P^5 (hyperplane section Sum u = 0, quintic F_N = 0), its
// plane families, nodes, D-lines, the S6 action, the squaring-map fiber
// count, and the exhaustive mod-p singular census.

#include <hq/fq.hpp>
#include <hq/poly.hpp>
#include <hq/projective.hpp>

#include <array>
#include <string>
#include <vector>

namespace hq {

MultiPoly sum_u(const Field* f);          // u0 + ... + u5
MultiPoly nieto_quintic(const Field* f);  // sum_i prod_{j != i} u_j

struct NMembership {
  bool on_n;
  Scalar sum, fn;
};
NMembership n_membership(const ProjPoint& u);

// membership on the line variety side: Sum x_i^2 = 0 and F_N(x^2) = 0
bool m_membership(const ProjPoint& x);

// rank of the 2x6 Jacobian of (Sum u, F_N); 1 = singular, 2 = smooth
int jacobian_rank_on_N(const ProjPoint& u);

struct PlaneFamilies {
  // S-plane: pairing {(p0,p1),(p2,p3),(p4,p5)} with u_{p0} = -u_{p1}, ...
  std::vector<std::array<int, 6>> s_planes;  // 15
  std::vector<std::array<int, 2>> v_planes;  // 15 index pairs (i<j): u_i=u_j=0
  std::vector<std::array<int, 3>> d_lines;   // 20 triples (i<j<k): u_i=u_j=u_k=0
  std::vector<ProjPoint> nodes;              // 10, over Q
};

// families with symbolic containment in N verified on construction
PlaneFamilies plane_families();

// parametrized substitutions into 6-variable polynomials
std::vector<MultiPoly> s_plane_images(const Field* f, const std::array<int, 6>& pairing);
std::vector<MultiPoly> v_plane_images(const Field* f, const std::array<int, 2>& pair);
std::vector<MultiPoly> d_line_images(const Field* f, const std::array<int, 3>& triple);

// orbit under all 720 coordinate permutations; projective dedup when
// as_projective, raw coordinate-vector dedup otherwise
std::vector<ProjPoint> s6_orbit(const ProjPoint& p, bool as_projective = true);
size_t s6_orbit_size_raw(const std::vector<Scalar>& v);

struct FiberCount {
  bool degenerate = false;
  int count = 0;
};
// points x with x_i^2 = lambda u_i over the prime field of u
FiberCount squaring_fiber(const ProjPoint& u);

struct SingularCensus {
  struct Entry {
    std::vector<uint32_t> u;  // packed coordinates, normalized
    std::string cls;          // "node" | "dline" | "anomaly"
  };
  uint64_t prime = 0;
  uint64_t points_on_n = 0;
  std::vector<Entry> singular;
  int node_count = 0, dline_count = 0, anomaly_count = 0;
};
SingularCensus singular_census_N(uint64_t p);

}  // namespace hq
