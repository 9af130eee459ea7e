#include "support/paths.hpp"
#include "support/properties.hpp"

#include <doctest.h>

using namespace lattice;

TEST_CASE("every built knot family satisfies the structural properties") {
  for (const auto& [name, f] : props::knot_catalog(LATTICE_TEST_DATA)) {
    CAPTURE(name);
    const auto e = props::family_violation(f);
    CHECK_MESSAGE(!e, e.value_or(""));
    CHECK_FALSE(check_family(f));
  }
}

TEST_CASE("3-manifold lattice complexes are certified points") {
  for (const char* name : {"e8.txt", "sigma237.txt", "trefoil.txt", "minus_two.txt", "base_legs.txt"}) {
    CAPTURE(name);
    const auto g = weighted_part(read_graph_file(test_data::graph(name)));
    const SpinCStructures y(g);
    for (size_t t = 0; t < y.orbits().size(); ++t) {
      const auto lc = build_lattice_complex(y, static_cast<int>(t), certified_box(g, y, static_cast<int>(t)));
      CHECK_FALSE(props::complex_violation(lc.complex));
      CHECK(unfiltered_rank(lc.complex) == 1);
    }
  }
}

TEST_CASE("simplification and window slack preserve homology") {
  for (const IntVec& p : {IntVec{2, 3}, IntVec{2, 3, 5}, IntVec{2, 3, 7}, IntVec{2, 5, 7}}) {
    const auto l = ar_line(p);
    CHECK(assoc_graded_homology(line_complex(simplify_line(l).line)) == assoc_graded_homology(line_complex(l)));
  }
  const KnotFamily t = brieskorn_fiber_family({2, 3});
  for (int s : {-1, -2, -3}) {
    const auto a = surgery(t, s, 0), b = surgery(t, s, 2);
    for (size_t c = 0; c < a.family.size(); ++c) {
      const auto ca = core_complex(a.family.parts[c]), cb = core_complex(b.family.parts[c]);
      CHECK(assoc_graded_homology(ca) == assoc_graded_homology(cb));
      CHECK(d_invariant(ca) == d_invariant(cb));
    }
  }
}
