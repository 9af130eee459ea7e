#pragma once

#include "lattice/plumbing.hpp"

#include <map>

namespace lattice {

// Integer values K(v) on the weighted vertices.
using CharVector = IntVec;

struct SpinC {
  CharVector rep;  // the distinguished representative k_t
  int orbit_id = 0;
};

CharVector canonical_char(const PlumbingGraph& g);
bool is_characteristic(const CharVector& k, const PlumbingGraph& g);
Rational char_square(const CharVector& k, const PlumbingGraph& g);
Rational grf_value(const CharVector& k, const PlumbingGraph& g);
// ((2i - s)^2 + s) / (4s)
Rational grading_shift(const Rational& i, const Rational& sigma_sq);

// Spin^c structures of the boundary of a negative-definite weighted graph
// (an unweighted vertex, if present, is ignored).
class SpinCStructures {
 public:
  explicit SpinCStructures(const PlumbingGraph& g);

  int num_vertices() const { return static_cast<int>(q_.size()); }
  const IntMat& form() const { return q_; }
  const RatMat& form_inverse() const { return qinv_; }
  const BigInt& det() const { return det_; }
  const std::vector<SpinC>& orbits() const { return orbits_; }
  const CharVector& rep(int t) const { return orbits_.at(t).rep; }
  // Diagonal of the Hermite normal form; orbit representatives are K_con + 2x with 0 <= x_i < hnf_diag_i.
  const IntVec& hnf_diagonal() const { return hnf_diag_; }

  // The distinguished representative of the orbit of k.
  CharVector descend(const CharVector& k) const;
  int orbit_of(const CharVector& k) const;
  // Integer z with k_to = k_from + 2 Q z; throws if the two lie in different orbits.
  IntVec offset(const CharVector& k_from, const CharVector& k_to) const;
  int conj(int t) const { return conj_.at(t); }

  Rational square(const CharVector& k) const;
  Rational grf(const CharVector& k) const;
  Rational grf(int t) const { return grf(rep(t)); }
  // h_U(k + 2Qz) - h_U(k) = k.z + z^T Q z.
  int64_t height_step(const CharVector& k, const IntVec& z) const;

 private:
  IntMat q_;
  RatMat qinv_;
  BigInt det_;
  IntVec hnf_diag_;
  CharVector kcon_;
  std::vector<SpinC> orbits_;
  std::map<CharVector, int> index_;
  std::vector<int> conj_;
};

// Lower-triangular Hermite normal form of the column lattice of m.
IntMat hermite_normal_form(const IntMat& m);

struct SurgerySpinC {
  int t = 0;
  Rational i;
  Rational sigma_sq;
};

// Grading data of a knot presented by a graph with an unweighted vertex v0.
class KnotGrading {
 public:
  explicit KnotGrading(const PlumbingGraph& g_v0);

  const PlumbingGraph& graph() const { return g_v0_; }
  const PlumbingGraph& base() const { return g_; }
  const SpinCStructures& spinc() const { return y_; }
  const IntVec& incidence() const { return e_; }
  const RatVec& sigma0() const { return sigma0_; }
  const Rational& sigma0_sq() const { return sigma0_sq_; }

  // Orbit of k_t + 2PD[v0].
  int plus_k(int t) const { return plus_k_.at(t); }
  int conj(int t) const { return y_.conj(t); }
  // (grf(t) - grf(t + [K])) / 2 mod 1.
  Rational alexander_coset(int t) const;

  SurgerySpinC conjugate(const SurgerySpinC& s) const;
  SurgerySpinC translated_conjugate(const SurgerySpinC& s) const;

 private:
  PlumbingGraph g_v0_;
  PlumbingGraph g_;
  SpinCStructures y_;
  IntVec e_;
  RatVec sigma0_;
  Rational sigma0_sq_;
  std::vector<int> plus_k_;
};

// (L(Sigma) + Sigma^2) / 2 for L characteristic on G_v0(n), indexed by the
// weighted vertices of the filled graph.
Rational a_hat(const CharVector& l, const PlumbingGraph& g_v0, int64_t n);
Rational alexander_coset(const PlumbingGraph& g_v0, int t);

}  // namespace lattice
