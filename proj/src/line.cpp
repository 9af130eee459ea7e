#include "lattice/reduction.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace lattice {

namespace {

int64_t mod_inverse(int64_t a, int64_t m) {
  int64_t g = m, x = 0, x1 = 1, r = ((a % m) + m) % m;
  while (r) {
    const int64_t q = g / r;
    std::tie(g, r) = std::make_pair(r, g - q * r);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw InputError("exponents are not pairwise coprime");
  return ((x % m) + m) % m;
}

int64_t ceil_div(int64_t a, int64_t b) {
  const int64_t q = a / b;
  return (a % b != 0 && ((a < 0) == (b < 0))) ? q + 1 : q;
}

void check_exponents(const IntVec& p) {
  if (p.size() < 2) throw InputError("need at least two exponents");
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 2) throw InputError("exponents must be at least 2");
    for (size_t j = 0; j < i; ++j)
      if (std::gcd(p[i], p[j]) != 1) throw InputError("exponents are not pairwise coprime");
  }
}

// Maximum over y of sum_j (K_j y_j + w_j y_j^2) + 2 n y_1 + 2 sum_j y_j y_{j+1}.
int64_t leg_max(const std::vector<int64_t>& k, const std::vector<int64_t>& w, int64_t n) {
  int64_t lo = std::min<int64_t>(0, n) - 2, hi = std::max<int64_t>(0, n) + 2;
  for (;;) {
    const size_t width = static_cast<size_t>(hi - lo + 1), len = k.size();
    std::vector<std::vector<int64_t>> f(len, std::vector<int64_t>(width));
    std::vector<std::vector<size_t>> arg(len, std::vector<size_t>(width, 0));
    for (size_t a = 0; a < width; ++a) {
      const int64_t y = lo + static_cast<int64_t>(a);
      f[0][a] = k[0] * y + w[0] * y * y + 2 * n * y;
    }
    for (size_t j = 1; j < len; ++j)
      for (size_t a = 0; a < width; ++a) {
        const int64_t y = lo + static_cast<int64_t>(a);
        int64_t best = 0;
        for (size_t b = 0; b < width; ++b) {
          const int64_t v = f[j - 1][b] + 2 * (lo + static_cast<int64_t>(b)) * y;
          if (b == 0 || v > best) {
            best = v;
            arg[j][a] = b;
          }
        }
        f[j][a] = best + k[j] * y + w[j] * y * y;
      }
    size_t a = static_cast<size_t>(std::max_element(f[len - 1].begin(), f[len - 1].end()) - f[len - 1].begin());
    const int64_t result = f[len - 1][a];
    bool interior = true;
    for (size_t j = len; j-- > 0;) {
      if (a == 0 || a + 1 == width) interior = false;
      if (j > 0) a = arg[j][a];
    }
    if (interior) return result;
    const int64_t grow = hi - lo;
    lo -= grow;
    hi += grow;
    if (hi - lo > 1000000) throw ComputationError("tau oracle range did not close");
  }
}

}  // namespace

AlphaGamma alpha_gamma(const IntVec& p) {
  check_exponents(p);
  AlphaGamma out;
  out.alpha = 1;
  for (int64_t v : p) out.alpha *= v;
  int64_t s = 0;
  for (int64_t v : p) s += out.alpha / v;
  out.gamma = out.alpha * (static_cast<int64_t>(p.size()) - 2) - s;
  return out;
}

SeifertInvariants seifert_invariants(const IntVec& p) {
  const int64_t alpha = alpha_gamma(p).alpha;
  SeifertInvariants out;
  int64_t s = 0;
  for (int64_t pi : p) {
    const int64_t a = alpha / pi;
    const int64_t q = (pi - mod_inverse(a, pi)) % pi;
    out.q.push_back(q);
    s += q * a;
  }
  if ((-1 - s) % alpha != 0) throw ComputationError("Seifert invariants do not close");
  out.e0 = (-1 - s) / alpha;
  return out;
}

IntVec hirzebruch_jung(int64_t p, int64_t q) {
  if (p <= 0 || q <= 0 || q > p || std::gcd(p, q) != 1) throw InputError("continued fraction needs 0 < q <= p coprime");
  IntVec out;
  while (q > 0) {
    const int64_t b = ceil_div(p, q);
    out.push_back(b);
    std::tie(p, q) = std::make_pair(q, b * q - p);
  }
  return out;
}

PlumbingGraph brieskorn_star(const IntVec& p, bool knot) {
  const auto inv = seifert_invariants(p);
  std::vector<IntVec> legs;
  for (size_t i = 0; i < p.size(); ++i) {
    IntVec leg = hirzebruch_jung(p[i], inv.q[i]);
    for (auto& b : leg) b = -b;
    legs.push_back(std::move(leg));
  }
  return star_graph(inv.e0, legs, knot);
}

IntVec brieskorn_exponents(const PlumbingGraph& g_v0) {
  validate_graph(g_v0);
  const auto v0 = g_v0.v0();
  if (!v0) throw InputError("graph has no unweighted vertex");
  const auto adj = g_v0.adjacency();
  if (adj[*v0].size() != 1) throw InputError("unweighted vertex must have exactly one neighbor");
  const int center = adj[*v0][0];
  std::vector<IntVec> legs;
  IntVec p;
  std::vector<uint8_t> seen(g_v0.size(), 0);
  seen[*v0] = seen[center] = 1;
  for (int start : adj[center]) {
    if (start == *v0) continue;
    IntVec leg;
    for (int prev = center, cur = start; cur >= 0;) {
      seen[cur] = 1;
      leg.push_back(*g_v0.weights[cur]);
      int next = -1;
      for (int u : adj[cur])
        if (u != prev) {
          if (next >= 0) throw InputError("not a star: vertex '" + g_v0.ids[cur] + "' branches");
          next = u;
        }
      prev = cur;
      cur = next;
    }
    // p / q = [b1, ..., bk] with b = -weight, evaluated from the far end.
    BigInt num = -leg.back(), den = 1;
    for (size_t j = leg.size() - 1; j-- > 0;) {
      const BigInt next = -leg[j] * num - den;
      den = num;
      num = next;
    }
    p.push_back(to_int64(num));
    legs.push_back(std::move(leg));
  }
  for (int v = 0; v < g_v0.size(); ++v)
    if (!seen[v]) throw InputError("not a star: vertex '" + g_v0.ids[v] + "' is not on a leg");
  const PlumbingGraph ref = brieskorn_star(p, true);
  const auto ref_adj = ref.adjacency();
  const int ref_center = ref_adj[*ref.v0()][0];
  if (*ref.weights[ref_center] != *g_v0.weights[center])
    throw InputError("star is not the Brieskorn plumbing of its leg exponents");
  std::vector<IntVec> ref_legs;
  for (int start : ref_adj[ref_center]) {
    if (start == *ref.v0()) continue;
    IntVec leg;
    for (int prev = ref_center, cur = start; cur >= 0;) {
      leg.push_back(*ref.weights[cur]);
      int next = -1;
      for (int u : ref_adj[cur])
        if (u != prev) next = u;
      prev = cur;
      cur = next;
    }
    ref_legs.push_back(std::move(leg));
  }
  auto sorted = legs;
  std::sort(sorted.begin(), sorted.end());
  std::sort(ref_legs.begin(), ref_legs.end());
  if (sorted != ref_legs) throw InputError("star is not the Brieskorn plumbing of its leg exponents");
  return p;
}

TauFunction::TauFunction(const IntVec& p) : p_(p), inv_(seifert_invariants(p)) {}

int64_t TauFunction::delta(int64_t n) const {
  int64_t d = 1 - inv_.e0 * n;
  for (size_t i = 0; i < p_.size(); ++i) d -= ceil_div(n * inv_.q[i], p_[i]);
  return d;
}

int64_t TauFunction::operator()(int64_t n) const {
  int64_t t = 0;
  if (n >= 0)
    for (int64_t k = 0; k < n; ++k) t += delta(k);
  else
    for (int64_t k = n; k < 0; ++k) t -= delta(k);
  return t;
}

TauFunction tau_closed_form(const IntVec& p) { return TauFunction(p); }

std::vector<int64_t> tau_lattice_oracle(const PlumbingGraph& g_v0, int64_t n_lo, int64_t n_hi) {
  const auto v0 = g_v0.v0();
  if (!v0) throw InputError("graph has no unweighted vertex");
  const auto adj = g_v0.adjacency();
  if (adj[*v0].size() != 1) throw InputError("unweighted vertex must have exactly one neighbor");
  const int center = adj[*v0][0];
  const auto weighted = g_v0.weighted();
  std::vector<int> pos(g_v0.size(), -1);
  for (size_t i = 0; i < weighted.size(); ++i) pos[weighted[i]] = static_cast<int>(i);

  const PlumbingGraph base = weighted_part(g_v0);
  const IntMat q = intersection_matrix(base);
  const CharVector k = canonical_char(base);

  std::vector<std::vector<int64_t>> leg_k, leg_w;
  for (int start : adj[center]) {
    if (start == *v0) continue;
    std::vector<int64_t> kk, ww;
    int prev = center, cur = start;
    for (;;) {
      kk.push_back(k[pos[cur]]);
      ww.push_back(q[pos[cur]][pos[cur]]);
      int next = -1;
      for (int u : adj[cur]) {
        if (u == prev) continue;
        if (u == *v0) throw InputError("unweighted vertex must sit on the center");
        if (next >= 0) throw InputError("graph is not a star");
        next = u;
      }
      if (next < 0) break;
      prev = cur;
      cur = next;
    }
    leg_k.push_back(std::move(kk));
    leg_w.push_back(std::move(ww));
  }
  if (static_cast<size_t>(std::accumulate(leg_k.begin(), leg_k.end(), size_t{1},
                                          [](size_t s, const auto& l) { return s + l.size(); })) != weighted.size())
    throw InputError("graph is not a connected star");

  const int64_t kc = k[pos[center]], wc = q[pos[center]][pos[center]];
  std::vector<int64_t> out;
  for (int64_t n = n_lo; n <= n_hi; ++n) {
    int64_t s = kc * n + wc * n * n;
    for (size_t l = 0; l < leg_k.size(); ++l) s += leg_max(leg_k[l], leg_w[l], n);
    if (s % 2 != 0) throw ComputationError("characteristic pairing is odd");
    out.push_back(-s / 2);
  }
  return out;
}

void calibrate_tau(const IntVec& p, int64_t n_max) {
  const TauFunction tau(p);
  const auto oracle = tau_lattice_oracle(brieskorn_star(p, true), -n_max, n_max);
  for (int64_t n = -n_max; n <= n_max; ++n)
    if (tau(n) != oracle[n + n_max])
      throw ComputationError("tau closed form disagrees with the lattice minimum at n=" + std::to_string(n));
}

std::pair<Rational, Rational> ar_line_heights(const IntVec& p, const Rational& hu_kt, int64_t n) {
  const TauFunction tau(p);
  const int64_t alpha = alpha_gamma(p).alpha;
  return {hu_kt - 2 * tau(n), hu_kt - 2 * tau(n - alpha)};
}

namespace {

FilteredLine ar_line_range(const IntVec& p, bool hull) {
  const auto ag = alpha_gamma(p);
  calibrate_tau(p, 2 * ag.alpha);
  const TauFunction tau(p);
  const PlumbingGraph star = brieskorn_star(p, false);
  const SpinCStructures y(star);
  if (abs(y.det()) != 1) throw ComputationError("star is not a homology sphere");

  FilteredLine l;
  l.alpha = ag.alpha;
  l.gamma = ag.gamma;
  l.hu_kt = y.grf(0);
  l.i_center = 1 + ag.gamma;
  l.j_center = 1 + ag.gamma + ag.alpha;
  l.gamma_shift = ag.alpha;
  l.one_plus_gamma_positive = 1 + ag.gamma > 0;
  if (!l.one_plus_gamma_positive) l.notes.push_back("1 + gamma <= 0");
  const int64_t hi = 1 + ag.gamma + ag.alpha;
  if (hi < 0) throw ComputationError("line support is empty");
  for (int64_t n = hull ? -ag.alpha : 0; n <= hi; ++n) {
    l.n.push_back(n);
    l.h1.push_back(l.hu_kt - 2 * tau(n));
    l.h2.push_back(l.hu_kt - 2 * tau(n - ag.alpha));
  }
  for (size_t j = 0; j + 1 < l.n.size(); ++j) {
    l.e1.push_back(std::min(l.h1[j], l.h1[j + 1]));
    l.e2.push_back(std::min(l.h2[j], l.h2[j + 1]));
  }
  return l;
}

}  // namespace

FilteredLine ar_line(const IntVec& p) { return ar_line_range(p, false); }

FilteredLine ar_line_hull(const IntVec& p) { return ar_line_range(p, true); }

SimplifyResult simplify_line(const FilteredLine& l) {
  SimplifyResult res;
  res.line = l;
  for (size_t j = 0; j + 1 < l.n.size(); ++j) {
    const Rational s1 = l.h1[j + 1] - l.h1[j], s2 = l.h2[j + 1] - l.h2[j];
    if (!(s1 == 2 || s1 == 0 || s1 == -2) || s2 != s1 + 2) res.dichotomy = false;
  }

  // Merge runs of vertices joined by edges at the same heights.
  FilteredLine m = l;
  m.n.assign(1, l.n[0]);
  m.h1.assign(1, l.h1[0]);
  m.h2.assign(1, l.h2[0]);
  m.e1.clear();
  m.e2.clear();
  for (size_t j = 0; j + 1 < l.n.size(); ++j) {
    const bool flat = l.h1[j + 1] == m.h1.back() && l.h2[j + 1] == m.h2.back() && l.e1[j] == m.h1.back() &&
                      l.e2[j] == m.h2.back();
    if (flat) continue;
    m.e1.push_back(l.e1[j]);
    m.e2.push_back(l.e2[j]);
    m.n.push_back(l.n[j + 1]);
    m.h1.push_back(l.h1[j + 1]);
    m.h2.push_back(l.h2[j + 1]);
  }

  const size_t nv = m.n.size();
  std::vector<uint8_t> keep(nv, 1);
  for (size_t j = 1; j + 1 < nv; ++j) {
    auto le = [&](size_t a, size_t b) { return m.h1[a] <= m.h1[b] && m.h2[a] <= m.h2[b]; };
    const bool jmax = le(j - 1, j) && le(j + 1, j);
    const bool jmin = le(j, j - 1) && le(j, j + 1);
    if (jmax || jmin) continue;
    const bool up = le(j - 1, j) && le(j, j + 1) && m.e1[j] == m.h1[j] && m.e2[j] == m.h2[j];
    const bool down = le(j, j - 1) && le(j + 1, j) && m.e1[j - 1] == m.h1[j] && m.e2[j - 1] == m.h2[j];
    if (!up && !down) {
      res.simplified = false;
      res.warning = "vertex n=" + std::to_string(m.n[j]) + " is neither extremal nor monotone; line left unchanged";
      return res;
    }
    keep[j] = 0;
  }

  FilteredLine out = m;
  out.n.clear();
  out.h1.clear();
  out.h2.clear();
  out.e1.clear();
  out.e2.clear();
  for (size_t j = 0; j < nv; ++j) {
    if (!keep[j]) continue;
    if (!out.n.empty()) {
      // Segment edges run from the previous kept vertex up to j.
      size_t a = j;
      while (!keep[a - 1]) --a;
      --a;
      Rational e1 = m.e1[a], e2 = m.e2[a];
      for (size_t k = a + 1; k < j; ++k) {
        e1 = std::min(e1, m.e1[k]);
        e2 = std::min(e2, m.e2[k]);
      }
      out.e1.push_back(e1);
      out.e2.push_back(e2);
    }
    out.n.push_back(m.n[j]);
    out.h1.push_back(m.h1[j]);
    out.h2.push_back(m.h2[j]);
  }
  if (!res.dichotomy) res.warning = "step dichotomy fails on this line";
  res.line = std::move(out);
  return res;
}

FilteredComplex line_complex(const FilteredLine& l) {
  FilteredComplex x(1, 1, true);
  const size_t nv = l.n.size();
  x.reserve(2 * nv, 2 * nv);
  for (size_t j = 0; j < nv; ++j) {
    const int64_t lab[1] = {l.n[j]};
    x.add_cell(lab, 0, l.h1[j], l.h2[j], {});
  }
  for (size_t j = 0; j + 1 < nv; ++j) {
    const int64_t lab[1] = {l.n[j]};
    const int64_t bnd[2] = {static_cast<int64_t>(j), static_cast<int64_t>(j + 1)};
    x.add_cell(lab, 1, l.e1[j], l.e2[j], bnd);
  }
  x.tag = "[0]";
  return x;
}

KnotFamily line_family(const FilteredLine& l, int64_t core_lo, int64_t core_hi, const Rational& sigma0_sq) {
  if (!l.contiguous()) throw InputError("line family needs a contiguous line");
  const int64_t lo = l.lo(), hi = l.hi(), nv = static_cast<int64_t>(l.n.size());
  if (core_lo < lo || core_hi > hi || core_lo > core_hi) throw InputError("core is not inside the line");
  if (l.j_center != core_lo + core_hi) throw InputError("J does not preserve the core");
  if (l.i_center - lo != hi) throw InputError("I does not preserve the line");
  if (core_lo - l.gamma_shift < lo) throw InputError("Gamma image of the core leaves the line");
  auto vertex = [&](int64_t n) { return n - lo; };
  auto edge = [&](int64_t n) { return nv + n - lo; };

  KnotFamily f;
  KnotPart part;
  part.x = line_complex(l);
  const size_t total = part.x.size();
  part.core.assign(total, 0);
  for (int64_t n = core_lo; n <= core_hi; ++n) {
    part.core[vertex(n)] = 1;
    if (n < core_hi) part.core[edge(n)] = 1;
  }
  part.label = "[0]";
  CellMap g(total, kUndefined), im(total), jm(total, kUndefined);
  for (int64_t n = lo; n <= hi; ++n) {
    im[vertex(n)] = vertex(l.i_center - n);
    if (n < hi) im[edge(n)] = edge(l.i_center - n - 1);
  }
  for (int64_t n = core_lo; n <= core_hi; ++n) {
    g[vertex(n)] = vertex(n - l.gamma_shift);
    jm[vertex(n)] = vertex(l.j_center - n);
    if (n < core_hi) {
      g[edge(n)] = edge(n - l.gamma_shift);
      jm[edge(n)] = edge(l.j_center - n - 1);
    }
  }
  f.parts.push_back(std::move(part));
  f.plus_k = {0};
  f.conj = {0};
  f.sigma0_sq = sigma0_sq;
  f.gamma = {g};
  f.inv_i = {im};
  f.inv_j = {jm};
  f.name = "line";
  return f;
}

KnotFamily brieskorn_fiber_family(const IntVec& p) {
  const FilteredLine hull = ar_line_hull(p);
  return line_family(hull, 0, hull.hi(), sigma0_square(brieskorn_star(p, true)));
}

}  // namespace lattice
