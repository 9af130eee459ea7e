#include "lattice/verify.hpp"

#include "lattice/reduction.hpp"

#include <algorithm>
#include <set>

namespace lattice {

namespace {

struct LatticeCell {
  CharVector l;
  uint64_t e = 0;
  auto operator<=>(const LatticeCell&) const = default;
};

}  // namespace

VerifyReport verify_surgery(const PlumbingGraph& g_v0, int64_t n, int slack) {
  VerifyReport rep;
  const KnotGrading kg(g_v0);
  const KnotFamily fam = lattice_knot_family(kg, family_boxes(kg));
  rep.s = seifert_framing(g_v0, n);
  const SurgeryResult res = surgery(fam, rep.s, slack);
  rep.classes = res.parts.size();

  const int v0 = *g_v0.v0();
  const PlumbingGraph filled = fill(g_v0, n);
  const PlumbingGraph dual = attach_unweighted(filled, v0, "u0");
  const KnotGrading kg2(dual);
  const auto& y2 = kg2.spinc();
  rep.det = to_int64(abs(y2.det()));
  if (static_cast<int64_t>(rep.classes) != rep.det)
    rep.fail("class count " + std::to_string(rep.classes) + " differs from |det| = " + std::to_string(rep.det));

  // Weighted positions of G inside G_v0(n).
  const auto w1 = g_v0.weighted();
  const auto w2 = filled.weighted();
  const size_t n1 = w1.size(), n2 = w2.size();
  std::vector<size_t> to2(n1);
  size_t v0pos = 0;
  for (size_t j = 0; j < n2; ++j) {
    if (w2[j] == v0) v0pos = j;
    for (size_t i = 0; i < n1; ++i)
      if (w1[i] == w2[j]) to2[i] = j;
  }
  const IntMat& q1 = kg.spinc().form();
  const IntMat& q2 = y2.form();
  const RatVec& s0 = kg.sigma0();
  const IntVec& e2 = kg2.incidence();

  auto image = [&](const SurgeryPart& sp, size_t a) {
    const auto& cell = sp.cells[a];
    const int t = sp.cls.t_at(cell.node);
    const Rational i = sp.cls.i_at(cell.node, rep.s);
    const auto& part = fam.parts[t];
    const auto z = part.x.label(cell.inner);
    const uint64_t mask = part.x.mask(cell.inner);
    CharVector k = part.lattice->kt;
    for (size_t r = 0; r < n1; ++r)
      for (size_t c = 0; c < n1; ++c) k[r] += 2 * q1[r][c] * z[c];
    Rational ks = 0;
    for (size_t r = 0; r < n1; ++r) ks += s0[r] * k[r];
    const Rational lv0 = 2 * i - rep.s + ks;
    if (!is_integer(lv0)) throw ComputationError("L(v0) is not an integer");
    LatticeCell out;
    out.l.assign(n2, 0);
    for (size_t r = 0; r < n1; ++r) out.l[to2[r]] = k[r];
    out.l[v0pos] = to_int64(lv0);
    if (((out.l[v0pos] - n) % 2 + 2) % 2 != 0) throw ComputationError("L is not characteristic at v0");
    for (size_t r = 0; r < n1; ++r)
      if (mask >> r & 1) out.e |= uint64_t{1} << to2[r];
    if (cell.prism) out.e |= uint64_t{1} << v0pos;
    return out;
  };
  auto vertex_step = [&](CharVector l, size_t v) {
    for (size_t r = 0; r < n2; ++r) l[r] += 2 * q2[r][v];
    return l;
  };

  std::set<LatticeCell> all;
  std::set<int> orbits_seen;
  const auto boxes2 = family_boxes(kg2);
  for (const auto& sp : res.parts) {
    VerifyClassRow row;
    row.label = sp.cls.label;
    row.cells = sp.cells.size();
    std::vector<LatticeCell> img(sp.cells.size());
    for (size_t a = 0; a < sp.cells.size(); ++a) img[a] = image(sp, a);
    for (size_t a = 0; a < sp.cells.size() && rep.pass; ++a) {
      const auto& lc = img[a];
      if (!all.insert(lc).second) rep.fail("two assembled cells map to the same lattice cell in " + row.label);
      const int orbit = y2.orbit_of(lc.l);
      if (row.orbit < 0) row.orbit = orbit;
      if (orbit != row.orbit) rep.fail("class " + row.label + " meets two Spin^c structures");
      // Heights of [L, E] from the filled graph.
      Rational h1, h2;
      bool first = true;
      std::vector<size_t> dirs;
      for (size_t v = 0; v < n2; ++v)
        if (lc.e >> v & 1) dirs.push_back(v);
      for (uint64_t sub = 0; sub < (uint64_t{1} << dirs.size()); ++sub) {
        CharVector l = lc.l;
        for (size_t b = 0; b < dirs.size(); ++b)
          if (sub >> b & 1) l = vertex_step(l, dirs[b]);
        const Rational u = y2.grf(l);
        CharVector lv = l;
        for (size_t r = 0; r < n2; ++r) lv[r] += 2 * e2[r];
        const Rational v = y2.grf(lv);
        if (first || u < h1) h1 = u;
        if (first || v < h2) h2 = v;
        first = false;
      }
      if (h1 != sp.x.h1(a) || h2 != sp.x.h2(a))
        rep.fail("heights differ at a cell of " + row.label + ": assembled (" + to_string(sp.x.h1(a)) + "," +
                 to_string(sp.x.h2(a)) + ") direct (" + to_string(h1) + "," + to_string(h2) + ")");
      std::multiset<LatticeCell> want, got;
      for (size_t v : dirs) {
        const uint64_t f = lc.e & ~(uint64_t{1} << v);
        want.insert({lc.l, f});
        want.insert({vertex_step(lc.l, v), f});
      }
      for (int64_t f : sp.x.boundary(a)) got.insert(img[f]);
      if (want != got) rep.fail("boundary differs at a cell of " + row.label);
      ++rep.cells_checked;
    }
    if (row.orbit >= 0 && !orbits_seen.insert(row.orbit).second)
      rep.fail("two classes map to Spin^c structure " + std::to_string(row.orbit));

    if (row.orbit >= 0) {
      const auto direct = build_knot_complex(kg2, row.orbit, boxes2.core[row.orbit]).complex;
      KnotPart kp{sp.x, sp.core, sp.cls.label, nullptr};
      const FilteredComplex assembled = core_complex(kp);
      row.rank_direct = unfiltered_rank(direct);
      row.rank_assembled = unfiltered_rank(assembled);
      if (row.rank_direct != 1 || row.rank_assembled != 1)
        rep.fail("unfiltered rank is not 1 for " + row.label);
      else {
        row.d_direct = d_invariant(direct);
        row.d_assembled = d_invariant(assembled);
        if (row.d_direct != row.d_assembled) rep.fail("d-invariants differ for " + row.label);
        row.ranks_equal = assoc_graded_homology(direct) == assoc_graded_homology(assembled);
        if (!row.ranks_equal) rep.fail("associated graded ranks differ for " + row.label);
      }
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace lattice
