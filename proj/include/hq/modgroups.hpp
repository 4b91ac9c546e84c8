#pragma once
// Symplectic group computations around the (1,3)-polarised moduli picture:
// the finite group Sp(4,F_2) (order 720) by exhaustive scan, congruence-
// pattern membership for the paramodular group G13 and its level-2 subgroup
// G13(2), the duality involution V3 over Q(sqrt 3), the two stabilizer
// embeddings SL(2,Z)^2 -> Sp(4,Q), index towers enumerated in SL(2,Z/4),
// orbit counting for a normal subgroup, and the component counts 20 and 15.

#include <hq/linalg.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace hq {

// ---------- Sp(4,F_2) ----------
// 4x4 matrices over F_2 packed into uint16, bit 4*i+j = entry (i,j).
namespace f2 {
uint16_t mul(uint16_t x, uint16_t y);
uint16_t transpose(uint16_t m);
uint16_t identity();
uint16_t jmat();  // [[0,I],[I,0]] (= the symplectic form mod 2)
}  // namespace f2

struct Sp4F2 {
  std::vector<uint16_t> elems;  // ascending
  bool contains(uint16_t m) const;
  uint16_t inverse(uint16_t m) const;  // J m^T J
  // conjugacy class sizes, ascending
  std::vector<size_t> class_sizes() const;
};
Sp4F2 sp4_f2_enumerate();

// conjugacy class sizes of S6 by enumerating all 720 permutations, ascending
std::vector<size_t> s6_class_sizes();

// entrywise reduction mod 2 of a rational 4x4 matrix; denominators must be
// odd (the 1/3 entries of the paramodular pattern reduce fine)
uint16_t mat_mod2(const Mat& g);

// ---------- congruence patterns over Q ----------
enum class GammaLevel { g13, g13_level2 };

Mat sp_j(const Field* f);        // [[0,I2],[-I2,0]]
bool is_symplectic(const Mat& g);  // 4x4; g^T J g == J

// symplectic + entrywise pattern (for level 2: g - I in the doubled pattern,
// including the (4,2) entry in (2/3)Z).  Non-rational entries give false.
bool gamma_member(const Mat& g, GammaLevel level);

// ---------- V3 over Q(sqrt 3) ----------
Mat v3_matrix();

struct V3Report {
  bool square_is_identity = false;
  bool symplectic = false;
  int samples = 0;
  int conjugates_ok = 0;  // both V3 g V3^-1 and V3^-1 g V3 pass gamma_member
  std::vector<std::string> failures;  // witnesses
};
V3Report v3_checks(int samples = 50, uint64_t seed = 1);

// random members, built from patterned symplectic transvections
// x -> x + lambda <x,v> v and congruence-constrained stabilizer images
Mat sample_gamma13(std::mt19937_64& rng);
Mat sample_gamma13_2(std::mt19937_64& rng);

// random SL(2,Z) elements (words in the standard generators); the _even
// variant is congruent to I mod 2
Mat random_sl2z(std::mt19937_64& rng);
Mat random_sl2z_even(std::mt19937_64& rng);

// ---------- stabilizer embeddings ----------
enum class StabWhich { s1, s2 };
// M, Mp integral with det 1; s2 additionally needs M == Mp mod 2.  The s1
// image is block-diagonal with the second factor conjugated by diag(1,3) so
// that it fits the paramodular pattern; the s2 image is the bielliptic
// stabilizer shape.  Both land in G13, and in G13(2) exactly under the
// congruence conditions tested in the suite.
Mat stabilizer_embedding(const Mat& M, const Mat& Mp, StabWhich which);

// ---------- exact Siegel points over Q(i) ----------
struct SiegelPoint {
  Scalar t1, t2, t3;  // entries of symmetric Z = [[t1,t2],[t2,t3]]
};
const Field* siegel_field();            // Q(i)
bool siegel_valid(const SiegelPoint& z);  // Im Z > 0 by leading minors
// fractional-linear action (AZ+B)(CZ+D)^-1 of a rational symplectic matrix;
// throws if CZ+D is singular
SiegelPoint siegel_apply(const Mat& g, const SiegelPoint& z);

// ---------- index towers (all orders enumerated, never hardcoded) ----------
struct IndexTowers {
  size_t sl2z2 = 0;    // |SL(2,Z/2)|
  size_t sl2z4 = 0;    // |SL(2,Z/4)|
  size_t s1_index = 0;  // [S1:S1(2)] = sl2z2^2
  size_t g2 = 0;        // pairs M == Mp mod 2 in SL(2,Z/4)^2
  size_t g2pp = 0;      // pairs M == Mp == I mod 2
  size_t g2p = 0;       // additionally M == Mp mod 4
  size_t idx_a = 0;     // [G2:G2'']
  size_t idx_b = 0;     // [G2'':G2']
  size_t s2_index = 0;  // idx_a * idx_b
  size_t kernel_order = 0;  // ker SL(2,Z/4) -> SL(2,Z/2)
  bool kernel_shape = false;  // diag both 1 or both -1, off-diagonals in {0,2}
};
IndexTowers index_towers();

// ---------- orbit counting for a normal subgroup ----------
using Perm = std::vector<int>;
std::vector<Perm> perm_closure(const std::vector<Perm>& gens);

struct OrbitCount {
  size_t lhs = 0;  // G'-orbits on X, counted directly
  size_t rhs = 0;  // [G:G'] / [S:S'] for the stabilizers of x0
};
// G, Gp are full element lists; throws if G is not transitive on X, if Gp is
// not a subgroup of G, or if Gp is not normal in G
OrbitCount orbit_count_lemma(const std::vector<Perm>& G,
                             const std::vector<Perm>& Gp,
                             const std::vector<int>& X, int x0);

// ---------- component counts ----------
struct ComponentCounts {
  size_t products = 0;    // |Sp(4,F2)| / s1_index
  size_t bielliptic = 0;  // |Sp(4,F2)| / s2_index
};
ComponentCounts component_counts();

}  // namespace hq
