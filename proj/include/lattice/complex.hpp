#pragma once

#include "lattice/grading.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lattice {

// A finite cube complex over GF(2) with one or two exact heights per cell.
// Each cell carries an integer label (for lattice cells: the offset z of its
// base vertex from k_t) and a direction mask E; its dimension is |E|.
class FilteredComplex {
 public:
  FilteredComplex() = default;
  FilteredComplex(int ncoords, int ndirs, bool doubly);

  size_t size() const { return mask_.size(); }
  int ncoords() const { return ncoords_; }
  int ndirs() const { return ndirs_; }
  bool doubly() const { return doubly_; }

  // Boundary entries are indices of other cells; they may refer forward.
  int64_t add_cell(std::span<const int64_t> label, uint64_t mask, const Rational& h1, const Rational& h2,
                   std::span<const int64_t> boundary);
  int64_t add_cell(std::span<const int64_t> label, uint64_t mask, const Rational& h1,
                   std::span<const int64_t> boundary);
  void reserve(size_t cells, size_t boundary_entries);

  std::span<const int64_t> label(size_t c) const { return {base_.data() + c * ncoords_, static_cast<size_t>(ncoords_)}; }
  uint64_t mask(size_t c) const { return mask_[c]; }
  int dim(size_t c) const { return __builtin_popcountll(mask_[c]); }
  const Rational& h1(size_t c) const { return h1_[c]; }
  const Rational& h2(size_t c) const;
  Rational alexander(size_t c) const { return (h1(c) - h2(c)) / 2; }
  std::span<const int64_t> boundary(size_t c) const {
    return {bnd_.data() + bnd_off_[c], static_cast<size_t>(bnd_off_[c + 1] - bnd_off_[c])};
  }

  std::vector<Rational>& h1s() { return h1_; }
  std::vector<Rational>& h2s() { return h2_; }
  const std::vector<Rational>& h1s() const { return h1_; }
  const std::vector<Rational>& h2s() const { return h2_; }
  void drop_second() {
    doubly_ = false;
    h2_.clear();
  }
  void set_second(std::vector<Rational> h2);

  std::string tag;

 private:
  int ncoords_ = 0;
  int ndirs_ = 0;
  bool doubly_ = false;
  std::vector<int64_t> base_;
  std::vector<uint64_t> mask_;
  std::vector<Rational> h1_, h2_;
  std::vector<int64_t> bnd_off_{0};
  std::vector<int64_t> bnd_;
};

// Cell assignment between two complexes. kZero marks a cell sent to zero
// (degenerate image); kUndefined marks a cell outside the map's domain.
using CellMap = std::vector<int64_t>;
constexpr int64_t kZero = -1;
constexpr int64_t kUndefined = -2;

// Functor calculus on filtered complexes.
FilteredComplex p1(const FilteredComplex& x);
FilteredComplex p2(const FilteredComplex& x);
// Singly filtered complex with heights min(h1, h2 + 2i); throws if i is not in the Alexander coset.
FilteredComplex a_star(const FilteredComplex& x, const Rational& i);
FilteredComplex shift(const FilteredComplex& x, const Rational& q);
FilteredComplex shift2(const FilteredComplex& x, const Rational& q1, const Rational& q2);
// Product cells, indexed a * |Y| + b; heights add, boundary follows the Leibniz rule.
FilteredComplex tensor(const FilteredComplex& x, const FilteredComplex& y);
FilteredComplex sigma_swap(const FilteredComplex& x);
// Product of cell maps compatible with tensor().
CellMap tensor_map(const CellMap& f, const CellMap& g, size_t target_y_size);
FilteredComplex point_complex(bool doubly);

// Structural checks; each returns a description of the first violation.
std::optional<std::string> check_boundary_squared(const FilteredComplex& x);
std::optional<std::string> check_monotone(const FilteredComplex& x);
std::optional<std::string> check_coset(const FilteredComplex& x);
enum class MapContract { filtered, skew, first_to_first, second_to_first, none };
// Checks that f commutes with the boundary on its domain, and the height contract.
std::optional<std::string> check_cell_map(const FilteredComplex& src, const FilteredComplex& dst, const CellMap& f,
                                          MapContract contract);

// Axis-aligned region lo <= z <= hi of offsets from k_t.
struct Box {
  IntVec lo, hi;
  bool contains(const IntVec& z) const;
  bool contains(const Box& b) const;
  size_t num_points() const;
};
Box hull(const Box& a, const Box& b);
// Image of a box under z -> c - z (vertex level).
Box reflect(const Box& b, const IntVec& c);
Box translate(const Box& b, const IntVec& c);

// Dense lookup from (z, E) to a cell index of a complex built on a box.
struct LatticeIndex {
  Box box;
  CharVector kt;
  int t = 0;
  std::vector<int64_t> table;  // size num_points * 2^n
  int64_t find(std::span<const int64_t> z, uint64_t e) const;
};

struct LatticeComplex {
  FilteredComplex complex;
  LatticeIndex index;
};

size_t max_cells();
void check_cell_budget(size_t cells, const std::string& what);

LatticeComplex build_lattice_complex(const SpinCStructures& y, int t, const Box& box);
LatticeComplex build_knot_complex(const KnotGrading& kg, int t, const Box& box);

// Knot complexes for every Spin^c structure of Y, with the structural maps.
// Part t lives on a hull; the core cells (a face-closed subcomplex) are those
// on which Gamma and J are defined.
struct KnotPart {
  FilteredComplex x;
  std::vector<uint8_t> core;
  std::string label;
  std::shared_ptr<const LatticeIndex> lattice;  // set for lattice families
};

struct KnotFamily {
  std::vector<KnotPart> parts;
  std::vector<int> plus_k;
  std::vector<int> conj;
  std::vector<CellMap> gamma;  // core of t -> part plus_k[t]
  std::vector<CellMap> inv_i;  // part t -> part conj[t]
  std::vector<CellMap> inv_j;  // core of t -> core of conj[plus_k[t]]
  Rational sigma0_sq;           // self-pairing of the dual class, for framing conversion
  std::string name;

  size_t size() const { return parts.size(); }
  bool has_gamma() const { return gamma.size() == parts.size(); }
  bool has_involutions() const { return inv_i.size() == parts.size() && inv_j.size() == parts.size(); }
  int plus_k_inverse(int t) const;
  // Alexander range over core cells.
  std::pair<Rational, Rational> core_alexander_range(int t) const;
  Rational alexander_coset(int t) const;
};

// Face-closed subcomplex on the kept cells; `index` receives old -> new positions (-1 if dropped).
FilteredComplex subcomplex(const FilteredComplex& x, const std::vector<uint8_t>& keep,
                           std::vector<int64_t>* index = nullptr);
// The core of a part, where both heights are certified.
FilteredComplex core_complex(const KnotPart& p);

const CellMap& involution_I(const KnotFamily& f, int t);
const CellMap& involution_J(const KnotFamily& f, int t);
const CellMap& flip_Gamma(const KnotFamily& f, int t);

struct FamilyBoxes {
  std::vector<Box> core;  // doubly certified, J-symmetric
  std::vector<Box> hull;  // h_U certified, I-symmetric, contains Gamma(core of t - K)
};

KnotFamily lattice_knot_family(const KnotGrading& kg, const FamilyBoxes& boxes);
KnotFamily tensor_family(const KnotFamily& a, const KnotFamily& b);
// Keeps the listed parts; structural maps survive only if the selection is closed under them.
KnotFamily restrict_family(const KnotFamily& f, const std::vector<int>& keep);

// Verifies every structural property of a family; returns the first violation.
std::optional<std::string> check_family(const KnotFamily& f);

}  // namespace lattice
