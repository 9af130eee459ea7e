#include "lattice/grading.hpp"

#include <algorithm>

namespace lattice {

CharVector canonical_char(const PlumbingGraph& g) {
  CharVector k;
  for (int v : g.weighted()) k.push_back(-*g.weights[v] - 2);
  return k;
}

bool is_characteristic(const CharVector& k, const PlumbingGraph& g) {
  const auto w = g.weighted();
  if (k.size() != w.size()) return false;
  for (size_t i = 0; i < w.size(); ++i)
    if (((k[i] - *g.weights[w[i]]) % 2) != 0) return false;
  return true;
}

namespace {

Rational quadratic(const RatMat& inv, const CharVector& k) {
  Rational out = 0;
  for (size_t i = 0; i < k.size(); ++i) {
    if (k[i] == 0) continue;
    Rational row = 0;
    for (size_t j = 0; j < k.size(); ++j)
      if (k[j] != 0) row += inv[i][j] * k[j];
    out += row * k[i];
  }
  return out;
}

void check_negdef(const IntMat& q) {
  if (!is_negative_definite(q)) throw InputError("intersection form is not negative definite");
}

}  // namespace

Rational char_square(const CharVector& k, const PlumbingGraph& g) {
  const auto q = intersection_matrix(g);
  if (k.size() != q.size()) throw InputError("characteristic vector has the wrong length");
  return quadratic(inverse(q), k);
}

Rational grf_value(const CharVector& k, const PlumbingGraph& g) {
  return (char_square(k, g) + g.num_weighted()) / 4;
}

Rational grading_shift(const Rational& i, const Rational& s) {
  if (s == 0) throw InputError("grading_shift needs a nonzero framing");
  const Rational a = 2 * i - s;
  return (a * a + s) / (4 * s);
}

IntMat hermite_normal_form(const IntMat& m) {
  const size_t n = m.size();
  std::vector<std::vector<BigInt>> h(n, std::vector<BigInt>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) h[i][j] = m[i][j];
  auto col_axpy = [&](size_t dst, size_t src, const BigInt& f) {
    for (size_t r = 0; r < n; ++r) h[r][dst] -= f * h[r][src];
  };
  auto col_swap = [&](size_t a, size_t b) {
    for (size_t r = 0; r < n; ++r) std::swap(h[r][a], h[r][b]);
  };
  for (size_t i = 0; i < n; ++i) {
    // Euclid across columns i..n-1 on row i.
    while (true) {
      size_t best = n;
      for (size_t j = i; j < n; ++j)
        if (h[i][j] != 0 && (best == n || abs(h[i][j]) < abs(h[i][best]))) best = j;
      if (best == n) throw ComputationError("singular matrix in Hermite reduction");
      if (best != i) col_swap(i, best);
      bool done = true;
      for (size_t j = i + 1; j < n; ++j) {
        if (h[i][j] == 0) continue;
        col_axpy(j, i, h[i][j] / h[i][i]);
        if (h[i][j] != 0) done = false;
      }
      if (done) break;
    }
    if (h[i][i] < 0)
      for (size_t r = 0; r < n; ++r) h[r][i] = -h[r][i];
    for (size_t j = 0; j < i; ++j) col_axpy(j, i, floor_div(h[i][j], h[i][i]));
  }
  IntMat out(n, IntVec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out[i][j] = to_int64(h[i][j]);
  return out;
}

SpinCStructures::SpinCStructures(const PlumbingGraph& g0) {
  const PlumbingGraph g = weighted_part(g0);
  q_ = intersection_matrix(g);
  check_negdef(q_);
  det_ = determinant(q_);
  qinv_ = inverse(q_);
  kcon_ = canonical_char(g);
  const size_t n = q_.size();
  const IntMat h = hermite_normal_form(q_);
  for (size_t i = 0; i < n; ++i) hnf_diag_.push_back(h[i][i]);

  IntVec x(n, 0);
  while (true) {
    CharVector k = kcon_;
    for (size_t i = 0; i < n; ++i) k[i] += 2 * x[i];
    const CharVector kt = descend(k);
    if (index_.count(kt)) throw ComputationError("orbit representatives collide; Hermite reduction is inconsistent");
    index_[kt] = static_cast<int>(orbits_.size());
    orbits_.push_back({kt, static_cast<int>(orbits_.size())});
    size_t i = 0;
    while (i < n && ++x[i] == hnf_diag_[i]) x[i++] = 0;
    if (i == n) break;
  }
  if (BigInt(orbits_.size()) != abs(det_)) throw ComputationError("orbit count differs from |det|");
  for (const auto& o : orbits_) {
    CharVector neg = o.rep;
    for (auto& v : neg) v = -v;
    conj_.push_back(orbit_of(neg));
  }
}

CharVector SpinCStructures::descend(const CharVector& k0) const {
  const size_t n = q_.size();
  if (k0.size() != n) throw InputError("characteristic vector has the wrong length");
  // k = k0 + 2Qz with Qz <= c; the smallest such z gives k_t.
  IntVec c(n);
  for (size_t i = 0; i < n; ++i) {
    if ((kcon_[i] - k0[i]) % 2 != 0) throw InputError("vector is not characteristic");
    c[i] = (kcon_[i] - k0[i]) / 2;
  }
  IntVec z(n);
  for (size_t i = 0; i < n; ++i) {
    Rational s = 0;
    for (size_t j = 0; j < n; ++j) s += qinv_[i][j] * c[j];
    z[i] = ceil_int(s);
  }
  IntVec qz(n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) qz[i] += q_[i][j] * z[j];
  const int64_t cap = 1000000;
  for (int64_t step = 0;; ++step) {
    size_t v = n;
    for (size_t i = 0; i < n; ++i)
      if (qz[i] > c[i]) {
        v = i;
        break;
      }
    if (v == n) break;
    if (step > cap) throw ComputationError("descent to k_t did not terminate");
    ++z[v];
    for (size_t i = 0; i < n; ++i) qz[i] += q_[i][v];
  }
  CharVector k = k0;
  for (size_t i = 0; i < n; ++i) k[i] += 2 * qz[i];
  return k;
}

int SpinCStructures::orbit_of(const CharVector& k) const {
  const auto it = index_.find(descend(k));
  if (it == index_.end()) throw ComputationError("descended vector is not a known orbit representative");
  return it->second;
}

IntVec SpinCStructures::offset(const CharVector& from, const CharVector& to) const {
  const size_t n = q_.size();
  IntVec z(n);
  for (size_t i = 0; i < n; ++i) {
    Rational s = 0;
    for (size_t j = 0; j < n; ++j) s += qinv_[i][j] * (to[j] - from[j]);
    s /= 2;
    if (!is_integer(s)) throw ComputationError("vectors lie in different Spin^c orbits");
    z[i] = to_int64(s);
  }
  return z;
}

Rational SpinCStructures::square(const CharVector& k) const { return quadratic(qinv_, k); }

Rational SpinCStructures::grf(const CharVector& k) const { return (square(k) + num_vertices()) / 4; }

int64_t SpinCStructures::height_step(const CharVector& k, const IntVec& z) const {
  int64_t out = 0;
  for (size_t i = 0; i < z.size(); ++i) {
    if (z[i] == 0) continue;
    out += k[i] * z[i];
    for (size_t j = 0; j < z.size(); ++j) out += z[i] * q_[i][j] * z[j];
  }
  return out;
}

KnotGrading::KnotGrading(const PlumbingGraph& g_v0)
    : g_v0_(g_v0), g_(weighted_part(g_v0)), y_(g_), e_(v0_incidence(g_v0)) {
  sigma0_ = lattice::sigma0(g_v0);
  sigma0_sq_ = sigma0_square(g_v0);
  for (const auto& o : y_.orbits()) {
    CharVector k = o.rep;
    for (size_t i = 0; i < k.size(); ++i) k[i] += 2 * e_[i];
    plus_k_.push_back(y_.orbit_of(k));
  }
}

Rational KnotGrading::alexander_coset(int t) const {
  return mod1((y_.grf(t) - y_.grf(plus_k(t))) / 2);
}

SurgerySpinC KnotGrading::conjugate(const SurgerySpinC& s) const { return {conj(s.t), s.sigma_sq - s.i, s.sigma_sq}; }

SurgerySpinC KnotGrading::translated_conjugate(const SurgerySpinC& s) const {
  return {conj(plus_k(s.t)), -s.i, s.sigma_sq};
}

Rational a_hat(const CharVector& l, const PlumbingGraph& g_v0, int64_t n) {
  const auto v0 = *g_v0.v0();
  const auto filled = fill(g_v0, n);
  const auto w = filled.weighted();
  if (l.size() != w.size()) throw InputError("characteristic vector has the wrong length");
  const auto s0 = sigma0(g_v0);
  const Rational ssq = seifert_framing(g_v0, n);
  // Sigma = v0 - Sigma0, with Sigma0 supported on the weighted vertices of G.
  Rational value = 0;
  size_t gi = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] == v0) {
      value += l[i];
    } else {
      value -= s0[gi++] * l[i];
    }
  }
  return (value + ssq) / 2;
}

Rational alexander_coset(const PlumbingGraph& g_v0, int t) { return KnotGrading(g_v0).alexander_coset(t); }

}  // namespace lattice
