#include "lattice/complex.hpp"

#include <algorithm>
#include <cstdlib>

namespace lattice {

bool Box::contains(const IntVec& z) const {
  for (size_t i = 0; i < z.size(); ++i)
    if (z[i] < lo[i] || z[i] > hi[i]) return false;
  return true;
}

bool Box::contains(const Box& b) const {
  for (size_t i = 0; i < lo.size(); ++i)
    if (b.lo[i] < lo[i] || b.hi[i] > hi[i]) return false;
  return true;
}

size_t Box::num_points() const {
  size_t n = 1;
  for (size_t i = 0; i < lo.size(); ++i) {
    if (hi[i] < lo[i]) return 0;
    n *= static_cast<size_t>(hi[i] - lo[i] + 1);
  }
  return n;
}

Box hull(const Box& a, const Box& b) {
  Box out = a;
  for (size_t i = 0; i < a.lo.size(); ++i) {
    out.lo[i] = std::min(a.lo[i], b.lo[i]);
    out.hi[i] = std::max(a.hi[i], b.hi[i]);
  }
  return out;
}

Box reflect(const Box& b, const IntVec& c) {
  Box out = b;
  for (size_t i = 0; i < c.size(); ++i) {
    out.lo[i] = c[i] - b.hi[i];
    out.hi[i] = c[i] - b.lo[i];
  }
  return out;
}

Box translate(const Box& b, const IntVec& c) {
  Box out = b;
  for (size_t i = 0; i < c.size(); ++i) {
    out.lo[i] += c[i];
    out.hi[i] += c[i];
  }
  return out;
}

size_t max_cells() {
  if (const char* env = std::getenv("LATTICE_MAX_CELLS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<size_t>(v);
    throw InputError("LATTICE_MAX_CELLS must be a positive integer");
  }
  return 10000000;
}

void check_cell_budget(size_t cells, const std::string& what) {
  if (cells > max_cells())
    throw ComputationError(what + " needs " + std::to_string(cells) + " cells, above LATTICE_MAX_CELLS=" +
                           std::to_string(max_cells()));
}

int64_t LatticeIndex::find(std::span<const int64_t> z, uint64_t e) const {
  size_t p = 0, stride = 1;
  const size_t n = box.lo.size();
  for (size_t i = 0; i < n; ++i) {
    if (z[i] < box.lo[i] || z[i] > box.hi[i]) return -1;
    p += static_cast<size_t>(z[i] - box.lo[i]) * stride;
    stride *= static_cast<size_t>(box.hi[i] - box.lo[i] + 1);
  }
  return table[(p << n) | e];
}

namespace {

LatticeComplex build_box(const SpinCStructures& y, int t, const Box& box, const IntVec* incidence) {
  const size_t n = static_cast<size_t>(y.num_vertices());
  const CharVector& kt = y.rep(t);
  if (box.lo.size() != n || box.hi.size() != n) throw InputError("box has the wrong dimension");
  if (box.num_points() == 0) throw InputError("box is empty");
  if (!box.contains(IntVec(n, 0))) throw InputError("box does not contain k_t");
  if (n > 20) throw ComputationError("too many vertices for a dense cube complex");

  const size_t npts = box.num_points();
  const size_t nmask = size_t{1} << n;
  check_cell_budget(npts * nmask, "lattice complex");

  std::vector<size_t> stride(n), len(n);
  size_t s = 1;
  for (size_t i = 0; i < n; ++i) {
    stride[i] = s;
    len[i] = static_cast<size_t>(box.hi[i] - box.lo[i] + 1);
    s *= len[i];
  }

  // Vertex height offsets from h_U(k_t); for h_V add k_t.Sigma0 + Sigma0^2 + 2 z.e.
  std::vector<int64_t> hu(npts), hv;
  std::vector<IntVec> pts(npts, IntVec(n));
  {
    IntVec z = box.lo;
    for (size_t p = 0; p < npts; ++p) {
      pts[p] = z;
      hu[p] = y.height_step(kt, z);
      for (size_t i = 0; i < n; ++i) {
        if (++z[i] <= box.hi[i]) break;
        z[i] = box.lo[i];
      }
    }
  }
  const Rational base_u = y.grf(kt);
  Rational base_v;
  if (incidence) {
    hv.resize(npts);
    Rational ks = 0;
    const auto& inv = y.form_inverse();
    RatVec s0(n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) s0[i] += inv[i][j] * (*incidence)[j];
    Rational s0sq = 0;
    for (size_t i = 0; i < n; ++i) {
      ks += s0[i] * kt[i];
      s0sq += s0[i] * (*incidence)[i];
    }
    base_v = base_u + ks + s0sq;
    for (size_t p = 0; p < npts; ++p) {
      int64_t ze = 0;
      for (size_t i = 0; i < n; ++i) ze += pts[p][i] * (*incidence)[i];
      hv[p] = hu[p] + 2 * ze;
    }
  }

  auto valid = [&](size_t p, uint64_t e) {
    for (size_t i = 0; i < n; ++i)
      if ((e >> i & 1) && pts[p][i] == box.hi[i]) return false;
    return true;
  };

  LatticeComplex out;
  out.index.box = box;
  out.index.kt = kt;
  out.index.t = t;
  out.index.table.assign(npts * nmask, -1);
  std::vector<int64_t> cu(npts * nmask), cv;
  if (incidence) cv.resize(npts * nmask);

  std::vector<uint64_t> masks(nmask);
  for (uint64_t e = 0; e < nmask; ++e) masks[e] = e;
  std::stable_sort(masks.begin(), masks.end(),
                   [](uint64_t a, uint64_t b) { return __builtin_popcountll(a) < __builtin_popcountll(b); });

  int64_t count = 0;
  size_t bentries = 0;
  for (uint64_t e : masks) {
    for (size_t p = 0; p < npts; ++p) {
      if (!valid(p, e)) continue;
      const size_t key = (p << n) | e;
      out.index.table[key] = count++;
      bentries += 2 * static_cast<size_t>(__builtin_popcountll(e));
      if (e == 0) {
        cu[key] = hu[p];
        if (incidence) cv[key] = hv[p];
      } else {
        const int v = __builtin_ctzll(e);
        const uint64_t f = e & (e - 1);
        const size_t a = (p << n) | f, b = ((p + stride[v]) << n) | f;
        cu[key] = std::min(cu[a], cu[b]);
        if (incidence) cv[key] = std::min(cv[a], cv[b]);
      }
    }
  }

  out.complex = FilteredComplex(static_cast<int>(n), static_cast<int>(n), incidence != nullptr);
  out.complex.reserve(static_cast<size_t>(count), bentries);
  std::vector<int64_t> bnd;
  for (uint64_t e : masks) {
    for (size_t p = 0; p < npts; ++p) {
      const size_t key = (p << n) | e;
      if (out.index.table[key] < 0) continue;
      bnd.clear();
      for (size_t v = 0; v < n; ++v) {
        if (!(e >> v & 1)) continue;
        const uint64_t f = e & ~(uint64_t{1} << v);
        bnd.push_back(out.index.table[(p << n) | f]);
        bnd.push_back(out.index.table[((p + stride[v]) << n) | f]);
      }
      if (incidence)
        out.complex.add_cell(pts[p], e, base_u + cu[key], base_v + cv[key], bnd);
      else
        out.complex.add_cell(pts[p], e, base_u + cu[key], bnd);
    }
  }
  out.complex.tag = "[" + std::to_string(t) + "]";
  return out;
}

}  // namespace

LatticeComplex build_lattice_complex(const SpinCStructures& y, int t, const Box& box) {
  return build_box(y, t, box, nullptr);
}

LatticeComplex build_knot_complex(const KnotGrading& kg, int t, const Box& box) {
  return build_box(kg.spinc(), t, box, &kg.incidence());
}

KnotFamily lattice_knot_family(const KnotGrading& kg, const FamilyBoxes& boxes) {
  const auto& y = kg.spinc();
  const int nt = static_cast<int>(y.orbits().size());
  const size_t n = static_cast<size_t>(y.num_vertices());
  KnotFamily fam;
  fam.sigma0_sq = kg.sigma0_sq();
  std::vector<IntVec> zeta(nt), gam(nt);
  for (int t = 0; t < nt; ++t) {
    CharVector neg = y.rep(t);
    for (auto& v : neg) v = -v;
    zeta[t] = y.offset(y.rep(kg.conj(t)), neg);
    CharVector shifted = y.rep(t);
    for (size_t i = 0; i < n; ++i) shifted[i] += 2 * kg.incidence()[i];
    gam[t] = y.offset(y.rep(kg.plus_k(t)), shifted);
  }
  for (int t = 0; t < nt; ++t) {
    auto lc = build_knot_complex(kg, t, boxes.hull.at(t));
    KnotPart part;
    part.label = "[" + std::to_string(t) + "]";
    part.core.resize(lc.complex.size());
    const Box& core = boxes.core.at(t);
    for (size_t c = 0; c < lc.complex.size(); ++c) {
      const auto z = lc.complex.label(c);
      const uint64_t e = lc.complex.mask(c);
      bool in = true;
      for (size_t i = 0; i < n && in; ++i) {
        const int64_t top = z[i] + ((e >> i) & 1);
        in = z[i] >= core.lo[i] && top <= core.hi[i];
      }
      part.core[c] = in;
    }
    part.x = std::move(lc.complex);
    part.x.tag = part.label;
    part.lattice = std::make_shared<LatticeIndex>(std::move(lc.index));
    fam.parts.push_back(std::move(part));
    fam.plus_k.push_back(kg.plus_k(t));
    fam.conj.push_back(kg.conj(t));
  }
  IntVec w(n);
  for (int t = 0; t < nt; ++t) {
    const auto& p = fam.parts[t];
    const int tk = kg.plus_k(t), tb = kg.conj(t), tj = kg.conj(tk);
    CellMap g(p.x.size(), kUndefined), im(p.x.size()), jm(p.x.size(), kUndefined);
    for (size_t c = 0; c < p.x.size(); ++c) {
      const auto z = p.x.label(c);
      const uint64_t e = p.x.mask(c);
      for (size_t i = 0; i < n; ++i) w[i] = zeta[t][i] - z[i] - ((e >> i) & 1);
      im[c] = fam.parts[tb].lattice->find(w, e);
      if (im[c] < 0) throw ComputationError("hull box of " + p.label + " is not symmetric under I");
      if (!p.core[c]) continue;
      for (size_t i = 0; i < n; ++i) w[i] = z[i] + gam[t][i];
      g[c] = fam.parts[tk].lattice->find(w, e);
      if (g[c] < 0) throw ComputationError("hull box of part " + std::to_string(tk) + " does not contain the Gamma image");
      for (size_t i = 0; i < n; ++i) w[i] = zeta[tk][i] - z[i] - gam[t][i] - ((e >> i) & 1);
      jm[c] = fam.parts[tj].lattice->find(w, e);
      if (jm[c] < 0 || !fam.parts[tj].core[jm[c]])
        throw ComputationError("core box of " + p.label + " is not symmetric under J");
    }
    fam.gamma.push_back(std::move(g));
    fam.inv_i.push_back(std::move(im));
    fam.inv_j.push_back(std::move(jm));
  }
  fam.name = "lattice";
  return fam;
}

}  // namespace lattice
