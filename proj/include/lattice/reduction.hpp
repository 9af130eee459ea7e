#pragma once

#include "lattice/complex.hpp"

#include <functional>
#include <string>

namespace lattice {

// Box reduction. A box lo <= z <= hi (offsets from k_t) is certified when from
// each corner some ordering of the vertices of Z_min, repeated on a loop, walks
// outward without raising the checked heights. Since Z_min pairs non-positively
// with every vertex, later loops only gain slack, so two loops are checked.
struct BoxCertificate {
  int t = 0;
  Box box;
  std::vector<int> up_sequence;    // applied from the upper corner: K -> K + 2PD(v)
  std::vector<int> down_sequence;  // applied from the lower corner: K -> K - 2PD(v)
  bool knot = false;               // h_V checked as well as h_U
};

// Outward ordering of the vertices of Z_min from the corner with characteristic
// vector k (dir = +1 upward, -1 downward) along which no checked height rises;
// found by depth-first search. Empty when none is found.
std::vector<int> monotone_sequence(const SpinCStructures& y, const CharVector& k, const MinimalCycle& z,
                                   const IntVec* incidence, int dir);
// Checks the corners of a box; `incidence` enables the h_V check.
bool corner_up_ok(const SpinCStructures& y, int t, const IntVec& hi, const MinimalCycle& z, const IntVec* incidence);
bool corner_down_ok(const SpinCStructures& y, int t, const IntVec& lo, const MinimalCycle& z, const IntVec* incidence);
bool box_certified(const SpinCStructures& y, int t, const Box& box, const MinimalCycle& z, const IntVec* incidence);

// Box [-radius Z, radius Z] around k_t, checked for h_U and h_V; throws ComputationError if it fails.
BoxCertificate certify_box(const KnotGrading& kg, int t, int radius);
// Smallest certified radii (lower, upper) with the box [-lo Z, hi Z].
std::pair<int, int> minimal_radii(const SpinCStructures& y, int t, const MinimalCycle& z, const IntVec* incidence);
// Certified box for the 3-manifold complex of a weighted graph.
Box certified_box(const PlumbingGraph& g, const SpinCStructures& y, int t);
// Whether the box consisting of k_t alone is certified for both heights in every Spin^c structure.
bool is_subcontractible_knot(const PlumbingGraph& g_v0);
// Boxes for a full knot family: core boxes doubly certified and J-symmetric,
// hull boxes h_U certified, I-symmetric and containing the Gamma images.
FamilyBoxes family_boxes(const KnotGrading& kg);
KnotFamily build_lattice_family(const PlumbingGraph& g_v0);

// Brieskorn data.
struct AlphaGamma {
  int64_t alpha = 0;
  int64_t gamma = 0;
};
AlphaGamma alpha_gamma(const IntVec& p);

struct SeifertInvariants {
  int64_t e0 = 0;
  IntVec q;  // 1 <= q_i <= p_i - 1
};
// Solves e0 * alpha + sum q_i * alpha / p_i = -1.
SeifertInvariants seifert_invariants(const IntVec& p);
// Hirzebruch-Jung continued fraction p/q = b1 - 1/(b2 - ...).
IntVec hirzebruch_jung(int64_t p, int64_t q);
// Star plumbing of the Brieskorn sphere Sigma(p); with knot = true the
// regular fiber appears as an unweighted vertex on the center.
PlumbingGraph brieskorn_star(const IntVec& p, bool knot);
// Exponents p of a star with the unweighted vertex on its center, when the star
// is the Brieskorn plumbing of p; throws InputError otherwise.
IntVec brieskorn_exponents(const PlumbingGraph& g_v0);

class TauFunction {
 public:
  explicit TauFunction(const IntVec& p);
  const IntVec& p() const { return p_; }
  const SeifertInvariants& invariants() const { return inv_; }
  // tau(n+1) - tau(n) = 1 - e0 n - sum ceil(n q_i / p_i)
  int64_t delta(int64_t n) const;
  int64_t operator()(int64_t n) const;

 private:
  IntVec p_;
  SeifertInvariants inv_;
};

TauFunction tau_closed_form(const IntVec& p);
// Minimum of chi_{k_t}(x) = -(k_t(x) + x^2)/2 over lattice vectors x of the
// star with center coefficient n, for n in [n_lo, n_hi]. The graph must be a
// star with the unweighted vertex on the center.
std::vector<int64_t> tau_lattice_oracle(const PlumbingGraph& g_v0, int64_t n_lo, int64_t n_hi);
// Throws ComputationError if the closed form disagrees with the oracle on [-n_max, n_max].
void calibrate_tau(const IntVec& p, int64_t n_max);

// Doubly filtered line. Vertices sit at increasing indices n; the edge
// between consecutive vertices carries its own heights.
struct FilteredLine {
  std::vector<int64_t> n;
  std::vector<Rational> h1, h2;
  std::vector<Rational> e1, e2;  // size n.size() - 1
  int64_t alpha = 0, gamma = 0;
  int64_t i_center = 0;  // I(n) = i_center - n
  int64_t j_center = 0;  // J(n) = j_center - n
  int64_t gamma_shift = 0;  // Gamma(n) = n - gamma_shift
  Rational hu_kt;
  bool one_plus_gamma_positive = true;
  std::vector<std::string> notes;

  int64_t lo() const { return n.front(); }
  int64_t hi() const { return n.back(); }
  bool contiguous() const { return static_cast<int64_t>(n.size()) == hi() - lo() + 1; }
};

// Filtered line of the regular fiber in Sigma(p) (the fiber of the star's center).
FilteredLine ar_line(const IntVec& p);
// The same line extended to [-alpha, 1 + gamma + alpha], which is closed under I
// and contains the Gamma image of the support.
FilteredLine ar_line_hull(const IntVec& p);
// Heights of the extended (infinite) line at any index.
std::pair<Rational, Rational> ar_line_heights(const IntVec& p, const Rational& hu_kt, int64_t n);

struct SimplifyResult {
  FilteredLine line;
  bool dichotomy = true;    // every step has h1-step in {2,0,-2} and h2-step = h1-step + 2
  bool simplified = true;   // false when the input was returned unchanged
  std::string warning;
};
SimplifyResult simplify_line(const FilteredLine& l);

FilteredComplex line_complex(const FilteredLine& l);
// One-part family of a contiguous line with core [core_lo, core_hi]: I, J and
// Gamma act by the affine index maps, which must keep the hull and core closed.
KnotFamily line_family(const FilteredLine& hull, int64_t core_lo, int64_t core_hi, const Rational& sigma0_sq);
KnotFamily brieskorn_fiber_family(const IntVec& p);

}  // namespace lattice
