#pragma once

#include "lattice/homology.hpp"
#include "lattice/reduction.hpp"
#include "lattice/surgery.hpp"
#include "lattice/verify.hpp"

#include <string>

namespace lattice {

// JSON renderings; every rational is written as a "p/q" string.
std::string complex_json(const FilteredComplex& x, int indent = 2);
std::string line_json(const FilteredLine& l, int indent = 2);
std::string ranks_json(const BigradedRanks& r, int indent = 2);
std::string verify_json(const VerifyReport& r, int indent = 2);

// Tab-separated tables with a header row.
std::string line_tsv(const FilteredLine& l);
std::string ranks_tsv(const BigradedRanks& r);

// Per-part summary of a knot family over core cells: label, cells, Alexander range,
// top Alexander grading of the associated graded homology and its rank,
// and the d-invariant when the total rank is 1.
struct PartSummary {
  std::string label;
  size_t cells = 0;
  Rational a_min, a_max;
  Rational top;
  int64_t top_rank = 0;
  int64_t total_rank = 0;
  std::optional<Rational> d;
};
std::vector<PartSummary> summarize(const KnotFamily& f);
std::string summary_tsv(const std::vector<PartSummary>& rows);

}  // namespace lattice
