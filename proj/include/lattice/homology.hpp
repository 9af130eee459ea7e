#pragma once

#include "lattice/complex.hpp"

#include <map>
#include <utility>

namespace lattice {

// Ranks of the associated graded homology, keyed by (Maslov, Alexander).
// A q-cell has Maslov grading h1 + q and Alexander grading (h1 - h2)/2.
struct BigradedRanks {
  std::map<std::pair<Rational, Rational>, int64_t> table;

  int64_t total() const;
  // Largest Alexander grading with nonzero rank, and the rank summed over Maslov gradings there.
  std::pair<Rational, int64_t> top() const;
  std::map<Rational, int64_t> by_alexander() const;
  bool operator==(const BigradedRanks& o) const { return table == o.table; }
};

BigradedRanks assoc_graded_homology(const FilteredComplex& x);
// Total GF(2) homology rank ignoring filtrations.
int64_t unfiltered_rank(const FilteredComplex& x);
// Betti numbers by degree.
std::vector<int64_t> betti_numbers(const FilteredComplex& x);
// Height at which the generator of total homology appears in the h1 filtration;
// throws unless the total rank is 1.
Rational d_invariant(const FilteredComplex& x);
std::pair<Rational, Rational> alexander_range(const FilteredComplex& x);

}  // namespace lattice
