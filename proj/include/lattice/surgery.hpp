#pragma once

#include "lattice/complex.hpp"

#include <map>
#include <string>
#include <tuple>

namespace lattice {

// One surgered Spin^c class: the orbit of (t0, i0) under (t, i) -> (t + [K], i + s).
// Node k of the class is (t_{k mod d}, i0 + k s) where t_j = plus_k^j(t0).
struct SurgeryClass {
  std::vector<int> cycle;  // t_0, ..., t_{d-1}
  int t0 = 0;
  Rational i0;
  int64_t m = 0;
  std::string label;

  int t_at(int64_t k) const;
  Rational i_at(int64_t k, const Rational& s) const { return i0 + Rational(k) * s; }
};

// Node ranges kept by the truncation. Core prisms sit on [a_lo, a_hi], core B parts on
// [a_lo, a_hi + 1]. The hull [h_lo, h_hi] contains the core and adds collapsible nodes
// so that Gamma, I and J of the dual knot are exact node shifts.
struct SurgeryWindow {
  int64_t k_a = 0;  // first node whose A -> B map is not an isomorphism
  int64_t k_b = 0;  // last node whose A part cannot be removed
  int64_t a_lo = 0, a_hi = 0;
  int64_t h_lo = 0, h_hi = 0;
  bool in_core(int64_t node, bool prism) const { return node >= a_lo && node <= a_hi + (prism ? 0 : 1); }
  bool in_hull(int64_t node, bool prism) const { return node >= h_lo && node <= h_hi + (prism ? 0 : 1); }
};

std::vector<SurgeryClass> surgery_classes(const KnotFamily& x, const Rational& s);
// Class index and node k of the index (t, i).
std::pair<int, int64_t> locate_class(const std::vector<SurgeryClass>& classes, const KnotFamily& x,
                                     const Rational& s, int t, const Rational& i);
// Core window of one class; the hull equals the core.
SurgeryWindow surgery_window(const KnotFamily& x, const SurgeryClass& c, const Rational& s, int slack);
// Core windows of all classes with hulls closed under the node shifts of Gamma and I.
std::vector<SurgeryWindow> surgery_windows(const KnotFamily& x, const std::vector<SurgeryClass>& classes,
                                           const Rational& s, int slack);

// Provenance of an assembled cell: node, cell of the input part, and whether it is a prism.
struct AssembledCell {
  int64_t node = 0;
  int64_t inner = 0;
  bool prism = false;
};

struct SurgeryPart {
  SurgeryClass cls;
  SurgeryWindow window;
  FilteredComplex x;  // h1 from the diagram at i, h2 from the diagram at i + 1
  std::vector<AssembledCell> cells;
  std::vector<uint8_t> core;
  std::map<std::tuple<int64_t, int64_t, bool>, int64_t> index;

  int64_t find(int64_t node, int64_t inner, bool prism) const;
};

// Mapping cylinder of the truncated diagram for one class over the hull of `w`,
// with the dual knot filtration.
SurgeryPart assemble_class(const KnotFamily& x, const Rational& s, const SurgeryClass& c, const SurgeryWindow& w);

struct SurgeryResult {
  Rational s;
  std::vector<SurgeryPart> parts;
  KnotFamily family;  // the dual knot; maps absent when they cannot be built
  std::string note;
};

// Surgery with Seifert framing s < 0 on every Spin^c class.
SurgeryResult surgery(const KnotFamily& x, const Rational& s, int slack = 0);
// Seifert framing of graph framing n on a knot with dual self-pairing sigma0_sq.
Rational framing_to_seifert(int64_t n, const Rational& sigma0_sq);

}  // namespace lattice
