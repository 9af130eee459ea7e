#include "lattice/surgery.hpp"

#include <algorithm>

namespace lattice {

namespace {

int64_t mod_floor(int64_t a, int64_t n) { return ((a % n) + n) % n; }

int64_t class_size(const SurgeryClass& c, const Rational& s) {
  const Rational ds = Rational(static_cast<int64_t>(c.cycle.size())) * s;
  if (!is_integer(ds)) throw InputError("surgery coefficient " + to_string(s) + " times the [K]-cycle length " +
                                        std::to_string(c.cycle.size()) + " is not an integer");
  return to_int64(abs(ds));
}

std::vector<int64_t> core_ranks(const KnotPart& p, int64_t& count) {
  std::vector<int64_t> r(p.x.size(), -1);
  count = 0;
  for (size_t c = 0; c < p.x.size(); ++c)
    if (p.core[c]) r[c] = count++;
  return r;
}

}  // namespace

int SurgeryClass::t_at(int64_t k) const { return cycle[mod_floor(k, static_cast<int64_t>(cycle.size()))]; }

int64_t SurgeryPart::find(int64_t node, int64_t inner, bool prism) const {
  const auto it = index.find({node, inner, prism});
  return it == index.end() ? -1 : it->second;
}

Rational framing_to_seifert(int64_t n, const Rational& sigma0_sq) { return Rational(n) - sigma0_sq; }

std::vector<SurgeryClass> surgery_classes(const KnotFamily& x, const Rational& s) {
  if (s >= 0) throw InputError("surgery coefficient must be negative, got " + to_string(s));
  if (x.size() == 0) throw InputError("empty knot family");
  std::vector<SurgeryClass> out;
  std::vector<uint8_t> seen(x.size(), 0);
  int cycles = 0;
  for (size_t t = 0; t < x.size(); ++t) {
    if (seen[t]) continue;
    SurgeryClass base;
    for (int u = static_cast<int>(t); !seen[u]; u = x.plus_k[u]) {
      seen[u] = 1;
      base.cycle.push_back(u);
    }
    if (x.plus_k[base.cycle.back()] != static_cast<int>(t)) throw InputError("plus_k is not a permutation");
    base.t0 = static_cast<int>(t);
    const int64_t n = class_size(base, s);
    const Rational a = mod1(x.alexander_coset(base.t0));
    for (int64_t m = 0; m < n; ++m) {
      SurgeryClass c = base;
      c.m = m;
      c.i0 = a + m;
      out.push_back(std::move(c));
    }
    ++cycles;
  }
  for (auto& c : out)
    c.label = cycles == 1 ? "[" + std::to_string(c.m) + "]"
                          : "[" + std::to_string(c.t0) + ":" + std::to_string(c.m) + "]";
  return out;
}

std::pair<int, int64_t> locate_class(const std::vector<SurgeryClass>& classes, const KnotFamily& x,
                                     const Rational& s, int t, const Rational& i) {
  (void)x;
  for (size_t ci = 0; ci < classes.size(); ++ci) {
    const auto& c = classes[ci];
    const auto pos = std::find(c.cycle.begin(), c.cycle.end(), t);
    if (pos == c.cycle.end()) continue;
    const int64_t j = pos - c.cycle.begin();
    const int64_t d = static_cast<int64_t>(c.cycle.size());
    const Rational val = i - Rational(j) * s - mod1(c.i0);
    if (!is_integer(val)) throw ComputationError("index " + to_string(i) + " is not in the Alexander coset of part " +
                                                 std::to_string(t));
    const int64_t n = class_size(c, s);
    if (mod_floor(to_int64(val), n) != c.m) continue;
    const Rational r = (i - Rational(j) * s - c.i0) / (Rational(d) * s);
    return {static_cast<int>(ci), j + d * to_int64(r)};
  }
  throw ComputationError("no surgery class contains part " + std::to_string(t) + " at index " + to_string(i));
}

SurgeryWindow surgery_window(const KnotFamily& x, const SurgeryClass& c, const Rational& s, int slack) {
  if (slack < 0) throw InputError("slack must be non-negative");
  Rational big, small;
  bool first = true;
  for (int t : c.cycle) {
    const auto [lo, hi] = x.core_alexander_range(t);
    if (first || hi > big) big = hi;
    if (first || lo < small) small = lo;
    first = false;
  }
  const int64_t scan_lo = floor_int((big - c.i0) / s) - 1;
  const int64_t scan_hi = ceil_int((small - 1 - c.i0) / s) + 1;
  bool have_a = false, have_b = false;
  SurgeryWindow w;
  for (int64_t k = scan_lo; k <= scan_hi; ++k) {
    const auto [lo, hi] = x.core_alexander_range(c.t_at(k));
    const Rational i = c.i_at(k, s);
    const bool lambda_iso = i >= hi;
    const bool rho_removable = i + 1 <= lo;
    if (!lambda_iso && !have_a) {
      w.k_a = k;
      have_a = true;
    }
    if (!rho_removable) {
      w.k_b = k;
      have_b = true;
    }
  }
  if (!have_a || !have_b) throw ComputationError("empty surgery window for class " + c.label);
  w.a_lo = std::min(w.k_a, w.k_b + 1) - slack;
  w.a_hi = std::max(w.k_b, w.k_a - 1) + slack;
  return w;
}

std::vector<SurgeryWindow> surgery_windows(const KnotFamily& x, const std::vector<SurgeryClass>& classes,
                                           const Rational& s, int slack) {
  std::vector<SurgeryWindow> w;
  for (const auto& c : classes) {
    w.push_back(surgery_window(x, c, s, slack));
    w.back().h_lo = w.back().a_lo;
    w.back().h_hi = w.back().a_hi;
  }
  if (!x.has_gamma()) return w;
  // Node k of class c goes to node k + shift under Gamma and to node refl - k (B parts)
  // or refl - 1 - k (prisms) under I; both are constant along a class.
  const size_t n = classes.size();
  std::vector<int> g_cls(n), i_cls(n, -1);
  std::vector<int64_t> shift(n), refl(n);
  for (size_t ci = 0; ci < n; ++ci) {
    const auto& c = classes[ci];
    const auto [gc, gk] = locate_class(classes, x, s, c.t0, c.i0 + 1);
    g_cls[ci] = gc;
    shift[ci] = gk;
    if (!x.has_involutions()) continue;
    const auto [ic, ik] = locate_class(classes, x, s, x.conj[c.t0], s - c.i0);
    const auto [pc, pk] = locate_class(classes, x, s, x.conj[x.plus_k[c.t0]], -c.i0);
    if (pc != ic || pk != ik - 1) throw ComputationError("I does not act on prisms by a reflection");
    i_cls[ci] = ic;
    refl[ci] = ik;
  }
  auto grow = [](SurgeryWindow& t, int64_t lo, int64_t hi) {
    const bool changed = lo < t.h_lo || hi > t.h_hi;
    t.h_lo = std::min(t.h_lo, lo);
    t.h_hi = std::max(t.h_hi, hi);
    return changed;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t ci = 0; ci < n; ++ci)
      changed |= grow(w[g_cls[ci]], w[ci].a_lo + shift[ci], w[ci].a_hi + shift[ci]);
    for (size_t ci = 0; ci < n; ++ci)
      if (i_cls[ci] >= 0) changed |= grow(w[i_cls[ci]], refl[ci] - 1 - w[ci].h_hi, refl[ci] - 1 - w[ci].h_lo);
  }
  // Added nodes must be collapsible: A -> B an isomorphism on the left, A removable on the right.
  for (size_t ci = 0; ci < n; ++ci) {
    const auto& c = classes[ci];
    for (int64_t k = w[ci].h_lo; k <= w[ci].h_hi; ++k) {
      if (w[ci].in_core(k, true)) continue;
      const auto [lo, hi] = x.core_alexander_range(c.t_at(k));
      const Rational i = c.i_at(k, s);
      const bool ok = k < w[ci].a_lo ? i >= hi : i + 1 <= lo;
      if (!ok) throw ComputationError("hull node " + std::to_string(k) + " of class " + c.label + " is not collapsible");
    }
  }
  return w;
}

SurgeryPart assemble_class(const KnotFamily& x, const Rational& s, const SurgeryClass& c, const SurgeryWindow& w) {
  if (!x.has_gamma()) throw InputError("surgery needs the flip map Gamma");
  SurgeryPart out;
  out.cls = c;
  out.window = w;
  const auto& ref = x.parts.at(c.t0).x;
  const int nd = ref.ndirs();
  if (nd + 1 > 63) throw ComputationError("too many cube directions");
  const uint64_t prism_bit = uint64_t{1} << nd;
  const int64_t b_lo = w.h_lo, b_hi = w.h_hi + 1;

  // Cell indices: B parts by node, then prisms by node.
  std::vector<int64_t> b_off, p_off;
  std::vector<std::vector<int64_t>> ranks;
  int64_t total = 0;
  for (int64_t k = b_lo; k <= b_hi; ++k) {
    b_off.push_back(total);
    total += static_cast<int64_t>(x.parts.at(c.t_at(k)).x.size());
  }
  for (int64_t k = w.h_lo; k <= w.h_hi; ++k) {
    int64_t n = 0;
    ranks.push_back(core_ranks(x.parts.at(c.t_at(k)), n));
    p_off.push_back(total);
    total += n;
  }
  check_cell_budget(static_cast<size_t>(total), "assembled complex " + c.label);
  auto b_index = [&](int64_t k, int64_t cell) { return b_off[k - b_lo] + cell; };
  auto p_index = [&](int64_t k, int64_t cell) {
    const int64_t r = ranks[k - w.h_lo][cell];
    if (r < 0) throw ComputationError("prism over a non-core cell");
    return p_off[k - w.h_lo] + r;
  };

  out.x = FilteredComplex(ref.ncoords() + 1, nd + 1, true);
  std::vector<int64_t> label(ref.ncoords() + 1), bnd;
  for (int64_t k = b_lo; k <= b_hi; ++k) {
    const int t = c.t_at(k);
    const auto& p = x.parts.at(t).x;
    const Rational i = c.i_at(k, s);
    if (!is_integer(x.alexander_coset(t) - i)) throw ComputationError("index not in the Alexander coset");
    const Rational g0 = grading_shift(i, s), g1 = grading_shift(i + 1, s);
    const uint8_t in_core = w.in_core(k, false);
    for (size_t a = 0; a < p.size(); ++a) {
      label[0] = k;
      std::copy(p.label(a).begin(), p.label(a).end(), label.begin() + 1);
      bnd.clear();
      for (int64_t f : p.boundary(a)) bnd.push_back(b_index(k, f));
      out.index[{k, static_cast<int64_t>(a), false}] =
          out.x.add_cell(label, p.mask(a), p.h1(a) + g0, p.h1(a) + g1, bnd);
      out.cells.push_back({k, static_cast<int64_t>(a), false});
      out.core.push_back(in_core);
    }
  }
  for (int64_t k = w.h_lo; k <= w.h_hi; ++k) {
    const int t = c.t_at(k);
    const auto& part = x.parts.at(t);
    const auto& p = part.x;
    const auto& gamma = x.gamma.at(t);
    const Rational i = c.i_at(k, s);
    const Rational g0 = grading_shift(i, s), g1 = grading_shift(i + 1, s);
    const uint8_t in_core = w.in_core(k, true);
    for (size_t a = 0; a < p.size(); ++a) {
      if (!part.core[a]) continue;
      label[0] = k;
      std::copy(p.label(a).begin(), p.label(a).end(), label.begin() + 1);
      bnd.clear();
      for (int64_t f : p.boundary(a)) bnd.push_back(p_index(k, f));
      bnd.push_back(b_index(k, static_cast<int64_t>(a)));
      const int64_t ga = gamma[a];
      if (ga == kUndefined) throw ComputationError("Gamma undefined on a core cell of part " + part.label);
      if (ga >= 0) bnd.push_back(b_index(k + 1, ga));
      const Rational h1 = g0 + std::min(p.h1(a), p.h2(a) + 2 * i);
      const Rational h2 = g1 + std::min(p.h1(a), p.h2(a) + 2 * (i + 1));
      out.index[{k, static_cast<int64_t>(a), true}] = out.x.add_cell(label, p.mask(a) | prism_bit, h1, h2, bnd);
      out.cells.push_back({k, static_cast<int64_t>(a), true});
      out.core.push_back(in_core);
    }
  }
  out.x.tag = c.label;
  return out;
}

namespace {

struct Placer {
  const KnotFamily& x;
  const Rational& s;
  const std::vector<SurgeryClass>& classes;
  const std::vector<SurgeryPart>& parts;

  // Cell of the output for input cell `cell` of part t placed at index i.
  int64_t place(int t, const Rational& i, int64_t cell, bool prism) const {
    if (cell == kZero) return kZero;
    if (cell < 0) throw ComputationError("structural map undefined on an assembled cell");
    const auto [ci, k] = locate_class(classes, x, s, t, i);
    const auto& target = parts[ci];
    if (target.cls.t_at(k) != t) throw ComputationError("class lookup is inconsistent");
    const int64_t out = target.find(k, cell, prism);
    if (out < 0) throw ComputationError("image outside the hull of " + target.cls.label);
    return out;
  }
};

}  // namespace

SurgeryResult surgery(const KnotFamily& x, const Rational& s, int slack) {
  SurgeryResult res;
  res.s = s;
  const auto classes = surgery_classes(x, s);
  std::vector<SurgeryWindow> windows;
  try {
    windows = surgery_windows(x, classes, s, slack);
  } catch (const ComputationError& e) {
    res.note = std::string("hull windows not built: ") + e.what();
    for (const auto& c : classes) windows.push_back(surgery_window(x, c, s, slack));
    for (auto& w : windows) w.h_lo = w.a_lo, w.h_hi = w.a_hi;
  }
  for (size_t ci = 0; ci < classes.size(); ++ci) res.parts.push_back(assemble_class(x, s, classes[ci], windows[ci]));

  KnotFamily& f = res.family;
  f.sigma0_sq = 1 / s;
  f.name = "XKI(" + x.name + ")";
  for (const auto& sp : res.parts) {
    KnotPart kp;
    kp.x = sp.x;
    kp.core = sp.core;
    kp.label = sp.cls.label;
    f.parts.push_back(std::move(kp));
    const auto& c = sp.cls;
    f.plus_k.push_back(locate_class(classes, x, s, c.t0, c.i0 + 1).first);
    if (!x.conj.empty()) f.conj.push_back(locate_class(classes, x, s, x.conj[c.t0], s - c.i0).first);
  }
  if (f.conj.size() != f.parts.size()) f.conj = f.plus_k;
  if (!res.note.empty()) return res;

  const Placer pl{x, s, classes, res.parts};
  try {
    std::vector<CellMap> gam, inv_i, inv_j;
    for (const auto& sp : res.parts) {
      CellMap g(sp.cells.size(), kUndefined), im(sp.cells.size()), jm(sp.cells.size(), kUndefined);
      for (size_t a = 0; a < sp.cells.size(); ++a) {
        const auto& cell = sp.cells[a];
        const int t = sp.cls.t_at(cell.node);
        const Rational i = sp.cls.i_at(cell.node, s);
        if (sp.core[a]) g[a] = pl.place(t, i + 1, cell.inner, cell.prism);
        if (!x.has_involutions()) continue;
        if (cell.prism) {
          const int u = x.conj[x.plus_k[t]];
          const int64_t ja = x.inv_j[t][cell.inner];
          im[a] = pl.place(u, -i, ja, true);
          if (sp.core[a]) jm[a] = pl.place(u, -i - 1, ja, true);
        } else {
          const int u = x.conj[t];
          const int64_t ic = x.inv_i[t][cell.inner];
          im[a] = pl.place(u, s - i, ic, false);
          if (sp.core[a]) jm[a] = pl.place(u, s - i - 1, ic, false);
        }
      }
      gam.push_back(std::move(g));
      inv_i.push_back(std::move(im));
      inv_j.push_back(std::move(jm));
    }
    f.gamma = std::move(gam);
    if (x.has_involutions()) {
      f.inv_i = std::move(inv_i);
      f.inv_j = std::move(inv_j);
    }
  } catch (const ComputationError& e) {
    f.gamma.clear();
    f.inv_i.clear();
    f.inv_j.clear();
    res.note = std::string("structural maps of the dual knot not built: ") + e.what();
  }
  return res;
}

}  // namespace lattice
