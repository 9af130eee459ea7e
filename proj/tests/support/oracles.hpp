#pragma once

// Brute-force reference computations used to freeze expected values. None of
// these share code with the library beyond the data types.

#include "lattice/complex.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using lattice::IntMat;
using lattice::IntVec;
using lattice::Rational;

// Cofactor expansion along the first row.
inline int64_t det_cofactor(const IntMat& m) {
  const size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  int64_t s = 0;
  for (size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    IntMat minor;
    for (size_t r = 1; r < n; ++r) {
      IntVec row;
      for (size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(row);
    }
    s += ((j % 2) ? -1 : 1) * m[0][j] * det_cofactor(minor);
  }
  return s;
}

// Sylvester: -m positive definite iff every leading minor of -m is positive.
inline bool negative_definite_sylvester(const IntMat& m) {
  const size_t n = m.size();
  for (size_t k = 1; k <= n; ++k) {
    IntMat sub(k, IntVec(k));
    for (size_t r = 0; r < k; ++r)
      for (size_t c = 0; c < k; ++c) sub[r][c] = -m[r][c];
    if (det_cofactor(sub) <= 0) return false;
  }
  return true;
}

inline int64_t pair(const IntMat& q, const IntVec& x, size_t v) {
  int64_t s = 0;
  for (size_t u = 0; u < x.size(); ++u) s += q[v][u] * x[u];
  return s;
}

// Smallest nonzero z >= 0 with z.E_v <= 0 for every v, by enumeration of [0, bound]^n.
inline IntVec minimal_cycle_brute(const IntMat& q, int64_t bound) {
  const size_t n = q.size();
  std::optional<IntVec> best;
  IntVec z(n, 0);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == n) {
      bool nonzero = false;
      for (auto c : z) nonzero |= c != 0;
      if (!nonzero) return;
      for (size_t v = 0; v < n; ++v)
        if (pair(q, z, v) > 0) return;
      if (!best) {
        best = z;
      } else {
        for (size_t v = 0; v < n; ++v) (*best)[v] = std::min((*best)[v], z[v]);
      }
      return;
    }
    for (int64_t c = 0; c <= bound; ++c) {
      z[i] = c;
      rec(i + 1);
    }
  };
  rec(0);
  return best.value_or(IntVec{});
}

// GF(2) rank of a dense bit matrix given as rows of column indices.
inline int64_t gf2_rank(std::vector<std::vector<uint8_t>> rows) {
  int64_t rank = 0;
  const size_t ncols = rows.empty() ? 0 : rows[0].size();
  size_t r0 = 0;
  for (size_t c = 0; c < ncols && r0 < rows.size(); ++c) {
    size_t p = r0;
    while (p < rows.size() && !rows[p][c]) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r0]);
    for (size_t r = 0; r < rows.size(); ++r)
      if (r != r0 && rows[r][c])
        for (size_t k = c; k < ncols; ++k) rows[r][k] ^= rows[r0][k];
    ++r0;
    ++rank;
  }
  return rank;
}

// Betti numbers of the cells selected by `keep`, counting only boundary entries
// between selected cells, by dense ranks of the boundary matrices.
inline std::vector<int64_t> betti_dense(const lattice::FilteredComplex& x, const std::vector<uint8_t>& keep) {
  int top = 0;
  for (size_t c = 0; c < x.size(); ++c)
    if (keep[c]) top = std::max(top, x.dim(c));
  std::vector<std::vector<size_t>> by_dim(top + 2);
  std::vector<int64_t> pos(x.size(), -1);
  for (size_t c = 0; c < x.size(); ++c)
    if (keep[c]) {
      pos[c] = static_cast<int64_t>(by_dim[x.dim(c)].size());
      by_dim[x.dim(c)].push_back(c);
    }
  std::vector<int64_t> rk(top + 2, 0);  // rank of d_q : C_q -> C_{q-1}
  for (int q = 1; q <= top; ++q) {
    std::vector<std::vector<uint8_t>> m;
    for (size_t c : by_dim[q]) {
      std::vector<uint8_t> row(by_dim[q - 1].size(), 0);
      for (int64_t f : x.boundary(c))
        if (keep[f]) row[pos[f]] ^= 1;
      m.push_back(row);
    }
    rk[q] = gf2_rank(m);
  }
  std::vector<int64_t> b(top + 1);
  for (int q = 0; q <= top; ++q) b[q] = static_cast<int64_t>(by_dim[q].size()) - rk[q] - rk[q + 1];
  while (!b.empty() && b.back() == 0) b.pop_back();
  return b;
}

inline std::vector<int64_t> betti_dense(const lattice::FilteredComplex& x) {
  return betti_dense(x, std::vector<uint8_t>(x.size(), 1));
}

// Associated graded ranks keyed by (Maslov, Alexander): split the cells by
// exact height pair and take the homology of each piece.
inline std::map<std::pair<Rational, Rational>, int64_t> assoc_graded_dense(const lattice::FilteredComplex& x) {
  std::map<std::pair<Rational, Rational>, std::vector<uint8_t>> groups;
  for (size_t c = 0; c < x.size(); ++c) {
    auto& g = groups[{x.h1(c), x.h2(c)}];
    if (g.empty()) g.assign(x.size(), 0);
    g[c] = 1;
  }
  std::map<std::pair<Rational, Rational>, int64_t> out;
  for (const auto& [h, keep] : groups) {
    const auto b = betti_dense(x, keep);
    for (size_t q = 0; q < b.size(); ++q)
      if (b[q]) out[{h.first + static_cast<int64_t>(q), (h.first - h.second) / 2}] += b[q];
  }
  return out;
}

// d of a complex with homology of a point: the largest vertex height, since any
// vertex generates H_0.
inline Rational d_max_vertex(const lattice::FilteredComplex& x) {
  std::optional<Rational> best;
  for (size_t c = 0; c < x.size(); ++c)
    if (x.dim(c) == 0 && (!best || x.h1(c) > *best)) best = x.h1(c);
  return *best;
}

// d-invariants of the boundary of a negative-definite plumbing: the maximum of
// (k^T Q^{-1} k + s) / 4 over characteristic k with w_v <= k_v <= -w_v, grouped by
// the class of k modulo 2Q. Returns the sorted list of maxima.
inline std::vector<Rational> d_invariants_char(const IntMat& q, const std::vector<std::vector<Rational>>& qinv) {
  const size_t n = q.size();
  std::vector<std::pair<IntVec, Rational>> best;  // class representative, value
  IntVec k(n);
  auto same_class = [&](const IntVec& a, const IntVec& b) {
    for (size_t i = 0; i < n; ++i) {
      Rational s = 0;
      for (size_t j = 0; j < n; ++j) s += qinv[i][j] * Rational(a[j] - b[j], 2);
      if (denominator(s) != 1) return false;
    }
    return true;
  };
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == n) {
      Rational sq = 0;
      for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) sq += Rational(k[a]) * qinv[a][b] * Rational(k[b]);
      const Rational v = (sq + static_cast<int64_t>(n)) / 4;
      for (auto& [rep, val] : best)
        if (same_class(rep, k)) {
          if (v > val) val = v;
          return;
        }
      best.push_back({k, v});
      return;
    }
    const int64_t w = q[i][i];
    for (int64_t c = w; c <= -w; c += 2) {
      k[i] = c;
      rec(i + 1);
    }
  };
  rec(0);
  std::vector<Rational> out;
  for (const auto& [rep, v] : best) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

// max over x of k(x) + x^T Q x on a chain with given weights and canonical
// values, pairing with a fixed neighbour coefficient n on the first vertex,
// by enumeration of |x_v| <= bound.
inline int64_t chain_max_brute(const IntVec& k, const IntVec& w, int64_t n, int64_t bound) {
  const size_t m = w.size();
  IntVec x(m);
  std::optional<int64_t> best;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == m) {
      int64_t s = 2 * n * x[0];
      for (size_t v = 0; v < m; ++v) {
        s += k[v] * x[v] + w[v] * x[v] * x[v];
        if (v + 1 < m) s += 2 * x[v] * x[v + 1];
      }
      if (!best || s > *best) best = s;
      return;
    }
    for (int64_t c = -bound; c <= bound; ++c) {
      x[i] = c;
      rec(i + 1);
    }
  };
  rec(0);
  return *best;
}

}  // namespace oracle
