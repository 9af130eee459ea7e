#include "lattice/complex.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lattice {

FilteredComplex::FilteredComplex(int ncoords, int ndirs, bool doubly)
    : ncoords_(ncoords), ndirs_(ndirs), doubly_(doubly) {
  if (ndirs > 64) throw ComputationError("cube complex needs more than 64 directions");
}

void FilteredComplex::reserve(size_t cells, size_t boundary_entries) {
  base_.reserve(cells * ncoords_);
  mask_.reserve(cells);
  h1_.reserve(cells);
  if (doubly_) h2_.reserve(cells);
  bnd_off_.reserve(cells + 1);
  bnd_.reserve(boundary_entries);
}

int64_t FilteredComplex::add_cell(std::span<const int64_t> label, uint64_t mask, const Rational& h1,
                                  const Rational& h2, std::span<const int64_t> boundary) {
  if (static_cast<int>(label.size()) != ncoords_) throw ComputationError("cell label has the wrong length");
  base_.insert(base_.end(), label.begin(), label.end());
  mask_.push_back(mask);
  h1_.push_back(h1);
  if (doubly_) h2_.push_back(h2);
  bnd_.insert(bnd_.end(), boundary.begin(), boundary.end());
  bnd_off_.push_back(static_cast<int64_t>(bnd_.size()));
  return static_cast<int64_t>(mask_.size()) - 1;
}

int64_t FilteredComplex::add_cell(std::span<const int64_t> label, uint64_t mask, const Rational& h1,
                                  std::span<const int64_t> boundary) {
  if (doubly_) throw ComputationError("doubly filtered complex needs two heights");
  return add_cell(label, mask, h1, h1, boundary);
}

const Rational& FilteredComplex::h2(size_t c) const {
  if (!doubly_) throw ComputationError("complex is singly filtered");
  return h2_[c];
}

void FilteredComplex::set_second(std::vector<Rational> h2) {
  if (h2.size() != size()) throw ComputationError("second height has the wrong length");
  h2_ = std::move(h2);
  doubly_ = true;
}

FilteredComplex p1(const FilteredComplex& x) {
  FilteredComplex out = x;
  out.drop_second();
  return out;
}

FilteredComplex p2(const FilteredComplex& x) {
  FilteredComplex out = x;
  out.h1s() = x.h2s();
  if (!x.doubly()) throw ComputationError("p2 needs a doubly filtered complex");
  out.drop_second();
  return out;
}

FilteredComplex a_star(const FilteredComplex& x, const Rational& i) {
  if (!x.doubly()) throw ComputationError("a_star needs a doubly filtered complex");
  if (x.size() > 0 && !is_integer(x.alexander(0) - i))
    throw InputError("index " + to_string(i) + " is not in the Alexander coset " + to_string(mod1(x.alexander(0))));
  FilteredComplex out = x;
  for (size_t c = 0; c < x.size(); ++c) out.h1s()[c] = std::min(x.h1(c), x.h2(c) + 2 * i);
  out.drop_second();
  return out;
}

FilteredComplex shift(const FilteredComplex& x, const Rational& q) {
  FilteredComplex out = x;
  for (auto& h : out.h1s()) h += q;
  return out;
}

FilteredComplex shift2(const FilteredComplex& x, const Rational& q1, const Rational& q2) {
  if (!x.doubly()) throw ComputationError("shift2 needs a doubly filtered complex");
  FilteredComplex out = x;
  for (auto& h : out.h1s()) h += q1;
  for (auto& h : out.h2s()) h += q2;
  return out;
}

FilteredComplex tensor(const FilteredComplex& x, const FilteredComplex& y) {
  if (x.doubly() != y.doubly()) throw ComputationError("tensor factors must have the same number of heights");
  const bool doubly = x.doubly();
  FilteredComplex out(x.ncoords() + y.ncoords(), x.ndirs() + y.ndirs(), doubly);
  const size_t ny = y.size();
  check_cell_budget(x.size() * ny, "tensor product");
  out.reserve(x.size() * ny, 0);
  std::vector<int64_t> label(x.ncoords() + y.ncoords());
  std::vector<int64_t> bnd;
  for (size_t a = 0; a < x.size(); ++a) {
    const auto la = x.label(a);
    std::copy(la.begin(), la.end(), label.begin());
    for (size_t b = 0; b < ny; ++b) {
      const auto lb = y.label(b);
      std::copy(lb.begin(), lb.end(), label.begin() + x.ncoords());
      bnd.clear();
      for (int64_t f : x.boundary(a)) bnd.push_back(f * static_cast<int64_t>(ny) + static_cast<int64_t>(b));
      for (int64_t f : y.boundary(b)) bnd.push_back(static_cast<int64_t>(a * ny) + f);
      const uint64_t m = x.mask(a) | (y.mask(b) << x.ndirs());
      if (doubly)
        out.add_cell(label, m, x.h1(a) + y.h1(b), x.h2(a) + y.h2(b), bnd);
      else
        out.add_cell(label, m, x.h1(a) + y.h1(b), bnd);
    }
  }
  out.tag = x.tag + "*" + y.tag;
  return out;
}

CellMap tensor_map(const CellMap& f, const CellMap& g, size_t target_y_size) {
  CellMap out(f.size() * g.size());
  for (size_t a = 0; a < f.size(); ++a)
    for (size_t b = 0; b < g.size(); ++b) {
      int64_t v;
      if (f[a] == kUndefined || g[b] == kUndefined)
        v = kUndefined;
      else if (f[a] == kZero || g[b] == kZero)
        v = kZero;
      else
        v = f[a] * static_cast<int64_t>(target_y_size) + g[b];
      out[a * g.size() + b] = v;
    }
  return out;
}

FilteredComplex sigma_swap(const FilteredComplex& x) {
  if (!x.doubly()) throw ComputationError("sigma_swap needs a doubly filtered complex");
  FilteredComplex out = x;
  std::swap(out.h1s(), out.h2s());
  return out;
}

FilteredComplex point_complex(bool doubly) {
  FilteredComplex out(0, 0, doubly);
  if (doubly)
    out.add_cell({}, 0, Rational(0), Rational(0), {});
  else
    out.add_cell({}, 0, Rational(0), {});
  return out;
}

namespace {

// Sorted GF(2) sum of a list of cell indices.
std::vector<int64_t> gf2_normalize(std::vector<int64_t> v) {
  std::sort(v.begin(), v.end());
  std::vector<int64_t> out;
  for (size_t i = 0; i < v.size();) {
    size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(v[i]);
    i = j;
  }
  return out;
}

std::string cell_name(size_t c) { return "cell " + std::to_string(c); }

}  // namespace

std::optional<std::string> check_boundary_squared(const FilteredComplex& x) {
  std::vector<int64_t> acc;
  for (size_t c = 0; c < x.size(); ++c) {
    acc.clear();
    for (int64_t f : x.boundary(c)) {
      if (f < 0 || static_cast<size_t>(f) >= x.size()) return cell_name(c) + " has a dangling boundary entry";
      if (x.dim(f) + 1 != x.dim(c)) return cell_name(c) + " has a boundary face of the wrong dimension";
      for (int64_t g : x.boundary(f)) acc.push_back(g);
    }
    if (!gf2_normalize(acc).empty()) return "boundary squared is nonzero on " + cell_name(c);
  }
  return std::nullopt;
}

std::optional<std::string> check_monotone(const FilteredComplex& x) {
  for (size_t c = 0; c < x.size(); ++c)
    for (int64_t f : x.boundary(c)) {
      if (x.h1(f) < x.h1(c)) return "first height decreases from " + cell_name(c) + " to a face";
      if (x.doubly() && x.h2(f) < x.h2(c)) return "second height decreases from " + cell_name(c) + " to a face";
    }
  return std::nullopt;
}

std::optional<std::string> check_coset(const FilteredComplex& x) {
  if (x.size() == 0) return std::nullopt;
  for (size_t c = 1; c < x.size(); ++c) {
    if (!is_integer((x.h1(c) - x.h1(0)) / 2)) return "first height leaves its 2Z coset at " + cell_name(c);
    if (x.doubly() && !is_integer((x.h2(c) - x.h2(0)) / 2)) return "second height leaves its 2Z coset at " + cell_name(c);
  }
  return std::nullopt;
}

std::optional<std::string> check_cell_map(const FilteredComplex& src, const FilteredComplex& dst, const CellMap& f,
                                          MapContract contract) {
  if (f.size() != src.size()) return "map has the wrong domain size";
  std::vector<int64_t> lhs, rhs;
  for (size_t c = 0; c < src.size(); ++c) {
    if (f[c] == kUndefined) continue;
    if (f[c] >= 0) {
      if (static_cast<size_t>(f[c]) >= dst.size()) return "map sends " + cell_name(c) + " outside the target";
      if (dst.dim(f[c]) != src.dim(c)) return "map changes the dimension of " + cell_name(c);
      const auto& t = f[c];
      bool ok = true;
      switch (contract) {
        case MapContract::filtered:
          ok = dst.h1(t) >= src.h1(c) && (!src.doubly() || !dst.doubly() || dst.h2(t) >= src.h2(c));
          break;
        case MapContract::skew:
          ok = dst.h1(t) >= src.h2(c) && dst.h2(t) >= src.h1(c);
          break;
        case MapContract::first_to_first:
          ok = dst.h1(t) >= src.h1(c);
          break;
        case MapContract::second_to_first:
          ok = dst.h1(t) >= src.h2(c);
          break;
        case MapContract::none:
          break;
      }
      if (!ok) return "map lowers the filtration on " + cell_name(c);
    }
    lhs.clear();
    rhs.clear();
    if (f[c] >= 0)
      for (int64_t g : dst.boundary(f[c])) lhs.push_back(g);
    for (int64_t g : src.boundary(c)) {
      if (f[g] == kUndefined) return "map domain is not face-closed at " + cell_name(c);
      if (f[g] >= 0) rhs.push_back(f[g]);
    }
    if (gf2_normalize(lhs) != gf2_normalize(rhs)) return "map does not commute with the boundary on " + cell_name(c);
  }
  return std::nullopt;
}

int KnotFamily::plus_k_inverse(int t) const {
  for (size_t s = 0; s < plus_k.size(); ++s)
    if (plus_k[s] == t) return static_cast<int>(s);
  throw ComputationError("plus_k is not a permutation");
}

std::pair<Rational, Rational> KnotFamily::core_alexander_range(int t) const {
  const auto& p = parts.at(t);
  bool any = false;
  Rational lo, hi;
  for (size_t c = 0; c < p.x.size(); ++c) {
    if (!p.core[c]) continue;
    const Rational a = p.x.alexander(c);
    if (!any || a < lo) lo = a;
    if (!any || a > hi) hi = a;
    any = true;
  }
  if (!any) throw ComputationError("part " + p.label + " has no core cells");
  return {lo, hi};
}

Rational KnotFamily::alexander_coset(int t) const {
  const auto& p = parts.at(t);
  if (p.x.size() == 0) throw ComputationError("empty part");
  return mod1(p.x.alexander(0));
}

FilteredComplex subcomplex(const FilteredComplex& x, const std::vector<uint8_t>& keep, std::vector<int64_t>* index) {
  std::vector<int64_t> pos(x.size(), -1);
  int64_t n = 0;
  for (size_t c = 0; c < x.size(); ++c)
    if (keep[c]) pos[c] = n++;
  FilteredComplex out(x.ncoords(), x.ndirs(), x.doubly());
  std::vector<int64_t> bnd;
  for (size_t c = 0; c < x.size(); ++c) {
    if (!keep[c]) continue;
    bnd.clear();
    for (int64_t f : x.boundary(c)) {
      if (pos[f] < 0) throw ComputationError("kept cells are not face-closed");
      bnd.push_back(pos[f]);
    }
    if (x.doubly())
      out.add_cell(x.label(c), x.mask(c), x.h1(c), x.h2(c), bnd);
    else
      out.add_cell(x.label(c), x.mask(c), x.h1(c), bnd);
  }
  out.tag = x.tag;
  if (index) *index = std::move(pos);
  return out;
}

FilteredComplex core_complex(const KnotPart& p) { return subcomplex(p.x, p.core); }

const CellMap& involution_I(const KnotFamily& f, int t) {
  if (!f.has_involutions()) throw ComputationError("family carries no involutions");
  return f.inv_i.at(t);
}

const CellMap& involution_J(const KnotFamily& f, int t) {
  if (!f.has_involutions()) throw ComputationError("family carries no involutions");
  return f.inv_j.at(t);
}

const CellMap& flip_Gamma(const KnotFamily& f, int t) {
  if (!f.has_gamma()) throw ComputationError("family carries no flip map");
  return f.gamma.at(t);
}

KnotFamily tensor_family(const KnotFamily& a, const KnotFamily& b) {
  KnotFamily out;
  const int nb = static_cast<int>(b.size());
  auto idx = [nb](int i, int j) { return i * nb + j; };
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) {
      KnotPart p;
      p.x = tensor(a.parts[i].x, b.parts[j].x);
      p.core.resize(p.x.size());
      for (size_t c = 0; c < a.parts[i].x.size(); ++c)
        for (size_t d = 0; d < b.parts[j].x.size(); ++d)
          p.core[c * b.parts[j].x.size() + d] = a.parts[i].core[c] && b.parts[j].core[d];
      std::string la = a.parts[i].label, lb = b.parts[j].label;
      auto strip = [](std::string s) {
        if (s.size() >= 2 && s.front() == '[' && s.back() == ']') return s.substr(1, s.size() - 2);
        return s;
      };
      p.label = "[" + strip(la) + "," + strip(lb) + "]";
      p.x.tag = p.label;
      out.parts.push_back(std::move(p));
    }
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) {
      out.plus_k.push_back(idx(a.plus_k[i], b.plus_k[j]));
      out.conj.push_back(idx(a.conj[i], b.conj[j]));
    }
  if (a.has_gamma() && b.has_gamma()) {
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) {
        const size_t ny = b.parts[b.plus_k[j]].x.size();
        CellMap m = tensor_map(a.gamma[i], b.gamma[j], ny);
        out.gamma.push_back(std::move(m));
      }
  }
  if (a.has_involutions() && b.has_involutions()) {
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) {
        out.inv_i.push_back(tensor_map(a.inv_i[i], b.inv_i[j], b.parts[b.conj[j]].x.size()));
        out.inv_j.push_back(tensor_map(a.inv_j[i], b.inv_j[j], b.parts[b.conj[b.plus_k[j]]].x.size()));
      }
  }
  out.sigma0_sq = a.sigma0_sq + b.sigma0_sq;
  out.name = a.name + "#" + b.name;
  return out;
}

KnotFamily restrict_family(const KnotFamily& f, const std::vector<int>& keep) {
  std::vector<int> pos(f.size(), -1);
  for (size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] < 0 || static_cast<size_t>(keep[k]) >= f.size()) throw InputError("restrict: part index out of range");
    pos[keep[k]] = static_cast<int>(k);
  }
  KnotFamily out;
  out.sigma0_sq = f.sigma0_sq;
  out.name = f.name;
  bool closed = true;
  for (int t : keep) {
    out.parts.push_back(f.parts[t]);
    if (pos[f.plus_k[t]] < 0 || pos[f.conj[t]] < 0) closed = false;
  }
  if (closed) {
    for (int t : keep) {
      out.plus_k.push_back(pos[f.plus_k[t]]);
      out.conj.push_back(pos[f.conj[t]]);
      if (f.has_gamma()) out.gamma.push_back(f.gamma[t]);
      if (f.has_involutions()) {
        out.inv_i.push_back(f.inv_i[t]);
        out.inv_j.push_back(f.inv_j[t]);
      }
    }
  } else {
    for (size_t k = 0; k < keep.size(); ++k) {
      out.plus_k.push_back(static_cast<int>(k));
      out.conj.push_back(static_cast<int>(k));
    }
  }
  return out;
}

std::optional<std::string> check_family(const KnotFamily& f) {
  const size_t n = f.size();
  if (f.plus_k.size() != n || f.conj.size() != n) return std::string("index maps have the wrong size");
  for (size_t t = 0; t < n; ++t) {
    const auto& p = f.parts[t];
    const std::string where = "part " + p.label + ": ";
    if (auto e = check_boundary_squared(p.x)) return where + *e;
    if (auto e = check_monotone(p.x)) return where + *e;
    if (auto e = check_coset(p.x)) return where + *e;
    for (size_t c = 0; c < p.x.size(); ++c)
      if (p.core[c])
        for (int64_t g : p.x.boundary(c))
          if (!p.core[g]) return where + "core is not face-closed";
    if (f.has_gamma()) {
      const auto& dst = f.parts[f.plus_k[t]].x;
      CellMap g = f.gamma[t];
      for (size_t c = 0; c < g.size(); ++c)
        if (!p.core[c]) g[c] = kUndefined;
      if (auto e = check_cell_map(p.x, dst, g, MapContract::second_to_first)) return where + "Gamma: " + *e;
    }
    if (f.has_involutions()) {
      const int u = f.conj[t];
      if (auto e = check_cell_map(p.x, f.parts[u].x, f.inv_i[t], MapContract::first_to_first))
        return where + "I: " + *e;
      const auto& iu = f.inv_i[u];
      for (size_t c = 0; c < f.inv_i[t].size(); ++c) {
        const int64_t ic = f.inv_i[t][c];
        if (ic >= 0 && (f.conj[u] != static_cast<int>(t) || iu[ic] != static_cast<int64_t>(c)))
          return where + "I is not an involution";
      }
      const int w = f.conj[f.plus_k[t]];
      CellMap j = f.inv_j[t];
      for (size_t c = 0; c < j.size(); ++c) {
        if (!p.core[c]) {
          j[c] = kUndefined;
          continue;
        }
        if (j[c] >= 0 && !f.parts[w].core[j[c]]) return where + "J leaves the core";
      }
      if (auto e = check_cell_map(p.x, f.parts[w].x, j, MapContract::skew)) return where + "J: " + *e;
      // J is an involution on cores and Gamma o J = I wherever both sides are defined.
      const auto& jw = f.inv_j[w];
      for (size_t c = 0; c < j.size(); ++c) {
        if (j[c] < 0) continue;
        if (f.conj[f.plus_k[w]] != static_cast<int>(t) || jw[j[c]] != static_cast<int64_t>(c))
          return where + "J is not an involution";
        if (f.has_gamma()) {
          const int64_t gj = f.gamma[w][j[c]];
          if (gj != f.inv_i[t][c]) return where + "Gamma o J differs from I";
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace lattice
