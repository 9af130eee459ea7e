#pragma once

#include "lattice/homology.hpp"
#include "lattice/surgery.hpp"

namespace lattice {

struct VerifyClassRow {
  std::string label;
  int orbit = -1;  // Spin^c orbit of the filled graph
  size_t cells = 0;
  Rational d_direct, d_assembled;
  int64_t rank_direct = 0, rank_assembled = 0;
  bool ranks_equal = false;
};

struct VerifyReport {
  bool pass = true;
  std::string first_discrepancy;
  Rational s;
  int64_t det = 0;
  size_t classes = 0;
  size_t cells_checked = 0;
  std::vector<VerifyClassRow> rows;

  void fail(const std::string& why) {
    if (pass) first_discrepancy = why;
    pass = false;
  }
};

// Compares the assembled surgery complex of the knot v0 in G_v0 with the
// knot lattice complex of the dual knot in the filled graph G_v0(n): each
// assembled cell is sent to the lattice cell [L, E] of G_v0(n), and heights,
// boundaries, d-invariants and associated graded ranks must agree.
VerifyReport verify_surgery(const PlumbingGraph& g_v0, int64_t n, int slack = 0);

}  // namespace lattice
