#include "lattice/homology.hpp"

#include <algorithm>
#include <numeric>

namespace lattice {

int64_t BigradedRanks::total() const {
  int64_t s = 0;
  for (const auto& [k, v] : table) s += v;
  return s;
}

std::map<Rational, int64_t> BigradedRanks::by_alexander() const {
  std::map<Rational, int64_t> out;
  for (const auto& [k, v] : table)
    if (v) out[k.second] += v;
  return out;
}

std::pair<Rational, int64_t> BigradedRanks::top() const {
  const auto m = by_alexander();
  if (m.empty()) throw ComputationError("homology is zero");
  return *m.rbegin();
}

namespace {

// Integer keys for exact heights: h * lcm(denominators).
struct HeightKeys {
  std::vector<int64_t> k1, k2;
};

HeightKeys height_keys(const FilteredComplex& x) {
  BigInt d = 1;
  auto fold = [&](const std::vector<Rational>& hs) {
    for (const auto& h : hs) {
      const BigInt q = denominator(h);
      if (d % q != 0) d = d / boost::multiprecision::gcd(d, q) * q;
    }
  };
  fold(x.h1s());
  if (x.doubly()) fold(x.h2s());
  HeightKeys out;
  out.k1.reserve(x.size());
  for (const auto& h : x.h1s()) out.k1.push_back(to_int64(numerator(h) * (d / denominator(h))));
  if (x.doubly())
    for (const auto& h : x.h2s()) out.k2.push_back(to_int64(numerator(h) * (d / denominator(h))));
  return out;
}

void xor_into(std::vector<int64_t>& col, const std::vector<int64_t>& other, std::vector<int64_t>& scratch) {
  scratch.clear();
  std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(), std::back_inserter(scratch));
  col.swap(scratch);
}

// Column reduction over cells listed in `order` (faces before cofaces among
// boundary entries kept by `keep`). Returns, for each position, whether the
// cell is essential (a cycle never killed).
template <class Keep>
std::vector<uint8_t> essential_cells(const FilteredComplex& x, const std::vector<int64_t>& order, Keep keep) {
  const size_t m = order.size();
  std::vector<int64_t> pos(x.size(), -1);
  for (size_t i = 0; i < m; ++i) pos[order[i]] = static_cast<int64_t>(i);
  std::vector<int64_t> pivot_col(m, -1);
  std::vector<std::vector<int64_t>> reduced(m);
  std::vector<uint8_t> positive(m, 0), paired(m, 0);
  std::vector<int64_t> col, scratch;
  for (size_t j = 0; j < m; ++j) {
    const int64_t c = order[j];
    col.clear();
    for (int64_t f : x.boundary(c)) {
      if (!keep(c, f)) continue;
      if (pos[f] < 0) throw ComputationError("boundary face outside the reduced cell set");
      if (pos[f] >= static_cast<int64_t>(j)) throw ComputationError("cell order is not a filtration");
      col.push_back(pos[f]);
    }
    std::sort(col.begin(), col.end());
    while (!col.empty() && pivot_col[col.back()] >= 0) xor_into(col, reduced[pivot_col[col.back()]], scratch);
    if (col.empty()) {
      positive[j] = 1;
    } else {
      pivot_col[col.back()] = static_cast<int64_t>(j);
      paired[col.back()] = 1;
      reduced[j] = col;
    }
  }
  std::vector<uint8_t> out(m);
  for (size_t j = 0; j < m; ++j) out[j] = positive[j] && !paired[j];
  return out;
}

std::vector<int64_t> by_dimension(const FilteredComplex& x) {
  std::vector<int64_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int64_t a, int64_t b) { return x.dim(a) < x.dim(b); });
  return order;
}

}  // namespace

BigradedRanks assoc_graded_homology(const FilteredComplex& x) {
  if (!x.doubly()) throw ComputationError("associated graded homology needs a doubly filtered complex");
  const auto keys = height_keys(x);
  std::vector<int64_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int64_t a, int64_t b) {
    if (keys.k1[a] != keys.k1[b]) return keys.k1[a] < keys.k1[b];
    if (keys.k2[a] != keys.k2[b]) return keys.k2[a] < keys.k2[b];
    if (x.dim(a) != x.dim(b)) return x.dim(a) < x.dim(b);
    return a < b;
  });
  const auto ess = essential_cells(
      x, order, [&](int64_t c, int64_t f) { return keys.k1[c] == keys.k1[f] && keys.k2[c] == keys.k2[f]; });
  BigradedRanks out;
  for (size_t j = 0; j < order.size(); ++j) {
    if (!ess[j]) continue;
    const int64_t c = order[j];
    out.table[{x.h1(c) + x.dim(c), x.alexander(c)}] += 1;
  }
  return out;
}

int64_t unfiltered_rank(const FilteredComplex& x) {
  const auto ess = essential_cells(x, by_dimension(x), [](int64_t, int64_t) { return true; });
  return std::count(ess.begin(), ess.end(), 1);
}

std::vector<int64_t> betti_numbers(const FilteredComplex& x) {
  const auto order = by_dimension(x);
  const auto ess = essential_cells(x, order, [](int64_t, int64_t) { return true; });
  std::vector<int64_t> out;
  for (size_t j = 0; j < order.size(); ++j) {
    if (!ess[j]) continue;
    const int d = x.dim(order[j]);
    if (static_cast<int>(out.size()) <= d) out.resize(d + 1, 0);
    ++out[d];
  }
  return out;
}

Rational d_invariant(const FilteredComplex& x) {
  const auto keys = height_keys(x);
  std::vector<int64_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int64_t a, int64_t b) {
    if (keys.k1[a] != keys.k1[b]) return keys.k1[a] > keys.k1[b];
    if (x.dim(a) != x.dim(b)) return x.dim(a) < x.dim(b);
    return a < b;
  });
  const auto ess = essential_cells(x, order, [](int64_t, int64_t) { return true; });
  int64_t found = -1, count = 0;
  for (size_t j = 0; j < order.size(); ++j)
    if (ess[j]) {
      ++count;
      if (found < 0) found = order[j];
    }
  if (count != 1)
    throw ComputationError("total homology has rank " + std::to_string(count) + ", expected 1 on a certified box");
  return x.h1(found);
}

std::pair<Rational, Rational> alexander_range(const FilteredComplex& x) {
  if (x.size() == 0) throw ComputationError("empty complex");
  Rational lo = x.alexander(0), hi = lo;
  for (size_t c = 1; c < x.size(); ++c) {
    const Rational a = x.alexander(c);
    if (a < lo) lo = a;
    if (a > hi) hi = a;
  }
  return {lo, hi};
}

}  // namespace lattice
