#include "lattice/reduction.hpp"

#include <functional>
#include <set>

namespace lattice {

namespace {

constexpr int kLoops = 2;
constexpr int kMaxGrowth = 10000;
constexpr int64_t kSearchBudget = 1000000;

CharVector corner(const SpinCStructures& y, int t, const IntVec& z) {
  CharVector k = y.rep(t);
  const auto& q = y.form();
  for (size_t i = 0; i < k.size(); ++i)
    for (size_t j = 0; j < k.size(); ++j) k[i] += 2 * q[i][j] * z[j];
  return k;
}

IntVec scaled(const IntVec& z, int64_t r) {
  IntVec out(z.size());
  for (size_t i = 0; i < z.size(); ++i) out[i] = r * z[i];
  return out;
}

struct Offsets {
  std::vector<IntVec> zeta;  // -k_t = k_{conj t} + 2Q zeta_t
  std::vector<IntVec> gam;   // k_t + 2e = k_{t+K} + 2Q gam_t
};

Offsets structural_offsets(const KnotGrading& kg) {
  const auto& y = kg.spinc();
  Offsets out;
  for (size_t t = 0; t < y.orbits().size(); ++t) {
    CharVector neg = y.rep(t);
    for (auto& v : neg) v = -v;
    out.zeta.push_back(y.offset(y.rep(kg.conj(t)), neg));
    CharVector sh = y.rep(t);
    for (size_t i = 0; i < sh.size(); ++i) sh[i] += 2 * kg.incidence()[i];
    out.gam.push_back(y.offset(y.rep(kg.plus_k(t)), sh));
  }
  return out;
}

// Grows the box by Z at each failing corner until both corners certify.
bool grow_until_certified(const SpinCStructures& y, int t, Box& box, const MinimalCycle& z, const IntVec* inc) {
  bool changed = false;
  for (int it = 0; !corner_down_ok(y, t, box.lo, z, inc); ++it) {
    if (it > kMaxGrowth) throw ComputationError("box certification did not converge");
    for (size_t i = 0; i < box.lo.size(); ++i) box.lo[i] -= z.z[i];
    changed = true;
  }
  for (int it = 0; !corner_up_ok(y, t, box.hi, z, inc); ++it) {
    if (it > kMaxGrowth) throw ComputationError("box certification did not converge");
    for (size_t i = 0; i < box.hi.size(); ++i) box.hi[i] += z.z[i];
    changed = true;
  }
  return changed;
}

}  // namespace

std::vector<int> monotone_sequence(const SpinCStructures& y, const CharVector& k0, const MinimalCycle& z,
                                   const IntVec* inc, int dir) {
  const auto& q = y.form();
  const size_t n = z.z.size();
  auto ok = [&](const CharVector& k, size_t v) {
    const int64_t w = q[v][v];
    if (dir > 0 ? k[v] + w > 0 : k[v] < w) return false;
    if (inc && (dir > 0 ? k[v] + 2 * (*inc)[v] + w > 0 : k[v] + 2 * (*inc)[v] < w)) return false;
    return true;
  };
  // Depth-first over partial cycles 0 <= p <= Z_min; dead states are remembered.
  std::set<IntVec> dead;
  IntVec p(n, 0);
  CharVector k = k0;
  std::vector<int> seq;
  int64_t budget = kSearchBudget;
  std::function<bool()> rec = [&]() {
    if (p == z.z) return true;
    if (dead.count(p) || --budget < 0) return false;
    for (size_t v = 0; v < n; ++v) {
      if (p[v] == z.z[v] || !ok(k, v)) continue;
      ++p[v];
      for (size_t i = 0; i < n; ++i) k[i] += 2 * dir * q[i][v];
      seq.push_back(static_cast<int>(v));
      if (rec()) return true;
      seq.pop_back();
      for (size_t i = 0; i < n; ++i) k[i] -= 2 * dir * q[i][v];
      --p[v];
    }
    dead.insert(p);
    return false;
  };
  if (!rec()) return {};
  return seq;
}

namespace {

bool walk_ok(const SpinCStructures& y, CharVector k, const std::vector<int>& seq, const IntVec* inc, int dir) {
  const auto& q = y.form();
  for (int loop = 0; loop < kLoops; ++loop)
    for (int v : seq) {
      const int64_t w = q[v][v];
      if (dir > 0 ? k[v] + w > 0 : k[v] < w) return false;
      if (inc && (dir > 0 ? k[v] + 2 * (*inc)[v] + w > 0 : k[v] + 2 * (*inc)[v] < w)) return false;
      for (size_t i = 0; i < k.size(); ++i) k[i] += 2 * dir * q[i][v];
    }
  return true;
}

bool corner_ok(const SpinCStructures& y, int t, const IntVec& at, const MinimalCycle& z, const IntVec* inc, int dir) {
  const CharVector k = corner(y, t, at);
  const auto seq = monotone_sequence(y, k, z, inc, dir);
  return !seq.empty() && walk_ok(y, k, seq, inc, dir);
}

}  // namespace

bool corner_up_ok(const SpinCStructures& y, int t, const IntVec& hi, const MinimalCycle& z, const IntVec* inc) {
  return corner_ok(y, t, hi, z, inc, +1);
}

bool corner_down_ok(const SpinCStructures& y, int t, const IntVec& lo, const MinimalCycle& z, const IntVec* inc) {
  return corner_ok(y, t, lo, z, inc, -1);
}

bool box_certified(const SpinCStructures& y, int t, const Box& box, const MinimalCycle& z, const IntVec* inc) {
  return corner_down_ok(y, t, box.lo, z, inc) && corner_up_ok(y, t, box.hi, z, inc);
}

std::pair<int, int> minimal_radii(const SpinCStructures& y, int t, const MinimalCycle& z, const IntVec* inc) {
  int lo = 0, hi = 0;
  auto fail = [&](const char* side) {
    return ComputationError(std::string("no certified ") + side + " radius for Spin^c " + std::to_string(t) +
                            (inc ? " with both heights" : "") + " up to " + std::to_string(kMaxGrowth) +
                            " loops of Z_min");
  };
  while (!corner_down_ok(y, t, scaled(z.z, -lo), z, inc))
    if (++lo > kMaxGrowth) throw fail("lower");
  while (!corner_up_ok(y, t, scaled(z.z, hi), z, inc))
    if (++hi > kMaxGrowth) throw fail("upper");
  return {lo, hi};
}

BoxCertificate certify_box(const KnotGrading& kg, int t, int radius) {
  const auto z = minimal_cycle_per_component(kg.base());
  BoxCertificate cert;
  cert.t = t;
  cert.knot = true;
  cert.box = {scaled(z.z, -radius), scaled(z.z, radius)};
  const auto& y = kg.spinc();
  cert.up_sequence = monotone_sequence(y, corner(y, t, cert.box.hi), z, &kg.incidence(), +1);
  cert.down_sequence = monotone_sequence(y, corner(y, t, cert.box.lo), z, &kg.incidence(), -1);
  if (!box_certified(y, t, cert.box, z, &kg.incidence()))
    throw ComputationError("box of radius " + std::to_string(radius) + " is not certified for Spin^c " +
                           std::to_string(t));
  return cert;
}

Box certified_box(const PlumbingGraph& g, const SpinCStructures& y, int t) {
  const auto z = minimal_cycle_per_component(weighted_part(g));
  const auto [lo, hi] = minimal_radii(y, t, z, nullptr);
  return {scaled(z.z, -lo), scaled(z.z, hi)};
}

bool is_subcontractible_knot(const PlumbingGraph& g_v0) {
  const KnotGrading kg(g_v0);
  const auto z = minimal_cycle_per_component(kg.base());
  const IntVec zero(kg.spinc().num_vertices(), 0);
  for (size_t t = 0; t < kg.spinc().orbits().size(); ++t)
    if (!box_certified(kg.spinc(), static_cast<int>(t), {zero, zero}, z, &kg.incidence())) return false;
  return true;
}

FamilyBoxes family_boxes(const KnotGrading& kg) {
  const auto& y = kg.spinc();
  const int nt = static_cast<int>(y.orbits().size());
  const auto z = minimal_cycle_per_component(kg.base());
  const auto off = structural_offsets(kg);
  const IntVec* inc = &kg.incidence();
  FamilyBoxes out;
  for (int t = 0; t < nt; ++t) {
    const auto [lo, hi] = minimal_radii(y, t, z, inc);
    out.core.push_back({scaled(z.z, -lo), scaled(z.z, hi)});
  }
  for (int round = 0;; ++round) {
    if (round > kMaxGrowth) throw ComputationError("core boxes did not stabilize");
    bool changed = false;
    for (int t = 0; t < nt; ++t) {
      const int tk = kg.plus_k(t), u = kg.conj(tk);
      IntVec c(off.gam[t].size());
      for (size_t i = 0; i < c.size(); ++i) c[i] = off.zeta[tk][i] - off.gam[t][i];
      const Box img = reflect(out.core[t], c);
      if (!out.core[u].contains(img)) {
        out.core[u] = hull(out.core[u], img);
        changed = true;
      }
    }
    for (int t = 0; t < nt; ++t) changed |= grow_until_certified(y, t, out.core[t], z, inc);
    if (!changed) break;
  }
  out.hull = out.core;
  for (int s = 0; s < nt; ++s) {
    const int t = kg.plus_k(s);
    out.hull[t] = hull(out.hull[t], translate(out.core[s], off.gam[s]));
  }
  for (int round = 0;; ++round) {
    if (round > kMaxGrowth) throw ComputationError("hull boxes did not stabilize");
    bool changed = false;
    for (int t = 0; t < nt; ++t) {
      const Box img = reflect(out.hull[t], off.zeta[t]);
      const int u = kg.conj(t);
      if (!out.hull[u].contains(img)) {
        out.hull[u] = hull(out.hull[u], img);
        changed = true;
      }
    }
    for (int t = 0; t < nt; ++t) changed |= grow_until_certified(y, t, out.hull[t], z, nullptr);
    if (!changed) break;
  }
  return out;
}

KnotFamily build_lattice_family(const PlumbingGraph& g_v0) {
  const KnotGrading kg(g_v0);
  return lattice_knot_family(kg, family_boxes(kg));
}

}  // namespace lattice
