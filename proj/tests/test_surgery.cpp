#include "lattice/homology.hpp"
#include "lattice/io.hpp"
#include "lattice/reduction.hpp"
#include "lattice/surgery.hpp"
#include "lattice/verify.hpp"
#include "support/oracles.hpp"
#include "support/paths.hpp"

#include <doctest.h>

#include <algorithm>

using namespace lattice;

namespace {

PlumbingGraph graph(const char* name) { return read_graph_file(test_data::graph(name)); }

std::vector<Rational> family_d(const KnotFamily& f) {
  std::vector<Rational> out;
  for (const auto& p : f.parts) out.push_back(d_invariant(core_complex(p)));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Rational> filled_d(const PlumbingGraph& g_v0, int64_t n) {
  const SpinCStructures y(fill(g_v0, n));
  return oracle::d_invariants_char(y.form(), y.form_inverse());
}

}  // namespace

TEST_CASE("framing conversion") {
  CHECK(framing_to_seifert(-7, -6) == -1);
  CHECK(framing_to_seifert(-1, Rational(-5, 6)) == Rational(-1, 6));
  const KnotFamily t = brieskorn_fiber_family({2, 3});
  CHECK(t.sigma0_sq == -6);
}

TEST_CASE("class counts") {
  const KnotFamily t = brieskorn_fiber_family({2, 3});
  CHECK(surgery_classes(t, -1).size() == 1);
  CHECK(surgery_classes(t, -2).size() == 2);
  CHECK(surgery_classes(t, -3).size() == 3);
  CHECK_THROWS_AS(surgery_classes(t, Rational(-1, 2)), InputError);
  CHECK_THROWS_AS(surgery_classes(t, 1), InputError);
  CHECK_THROWS_AS(surgery_classes(t, 0), InputError);
  const KnotFamily two = build_lattice_family(graph("minus_two.txt"));
  // [K] cycles through both classes of L(2,1), so Seifert framing -3/2 is allowed.
  CHECK(surgery_classes(two, Rational(-3, 2)).size() == 3);
}

TEST_CASE("B part heights of -2 surgery on the trefoil") {
  const KnotFamily t = brieskorn_fiber_family({2, 3});
  const auto res = surgery(t, -2);
  bool found = false;
  for (const auto& sp : res.parts) {
    if (sp.cls.i0 != 0) continue;
    const int64_t lo = t.parts[0].x.label(0)[0];
    const int64_t cell = sp.find(0, 0 - lo, false);
    REQUIRE(cell >= 0);
    CHECK(sp.x.h1(cell) == Rational(-1, 4));
    CHECK(sp.x.h2(cell) == Rational(-7, 4));
    CHECK(sp.x.h1(cell) == grading_shift(0, -2));
    found = true;
  }
  CHECK(found);
}

TEST_CASE("surgery on the trefoil line matches the filled graph") {
  const KnotFamily t = brieskorn_fiber_family({2, 3});
  const auto g = graph("trefoil.txt");
  for (int64_t s : {-1, -2, -3, -4}) {
    CAPTURE(s);
    const auto res = surgery(t, s);
    CHECK(res.note.empty());
    CHECK_FALSE(check_family(res.family));
    CHECK(res.family.size() == static_cast<size_t>(-s));
    CHECK(family_d(res.family) == filled_d(g, s - 6));
    for (const auto& p : res.family.parts) CHECK(unfiltered_rank(core_complex(p)) == 1);
    CHECK(res.family.sigma0_sq == Rational(1) / s);
  }
  CHECK(family_d(surgery(t, -2).family) == std::vector<Rational>{Rational(-1, 4), Rational(1, 4)});
  CHECK(family_d(surgery(t, -3).family) == std::vector<Rational>{Rational(-1, 2), Rational(1, 6), Rational(1, 6)});
}

TEST_CASE("surgery on lattice families matches the filled graph") {
  for (const char* name : {"trefoil.txt", "minus_two.txt", "unknot.txt"}) {
    const auto g = graph(name);
    const KnotFamily f = build_lattice_family(g);
    for (int64_t n : {-3, -4, -5}) {
      if (!is_negative_definite(fill(g, n))) continue;
      const Rational s = seifert_framing(g, n);
      if (!is_integer(s * Rational(static_cast<int64_t>(f.size())))) continue;
      CAPTURE(name);
      CAPTURE(n);
      const auto res = surgery(f, s);
      CHECK_FALSE(check_family(res.family));
      CHECK(family_d(res.family) == filled_d(g, n));
    }
  }
}

TEST_CASE("assembled maps satisfy the involution identities") {
  const KnotFamily t = brieskorn_fiber_family({2, 3});
  const auto res = surgery(t, -3);
  const auto& f = res.family;
  REQUIRE(f.has_involutions());
  REQUIRE(f.has_gamma());
  for (size_t a = 0; a < f.size(); ++a) {
    const int u = f.conj[a], w = f.conj[f.plus_k[a]];
    for (size_t c = 0; c < f.parts[a].x.size(); ++c) {
      const int64_t i = f.inv_i[a][c];
      REQUIRE(i >= 0);
      CHECK(f.inv_i[u][i] == static_cast<int64_t>(c));
      if (!f.parts[a].core[c]) continue;
      const int64_t j = f.inv_j[a][c];
      REQUIRE(j >= 0);
      CHECK(f.inv_j[w][j] == static_cast<int64_t>(c));
      CHECK(f.parts[w].x.h1(j) == f.parts[a].x.h2(c));
      CHECK(f.gamma[w][j] == i);
    }
  }
}

TEST_CASE("window slack does not change invariants") {
  for (const IntVec& p : {IntVec{2, 3}, IntVec{2, 3, 7}}) {
    const KnotFamily t = brieskorn_fiber_family(p);
    for (int64_t s : {-1, -2}) {
      const auto a = surgery(t, s, 0), b = surgery(t, s, 1);
      REQUIRE(a.family.size() == b.family.size());
      for (size_t c = 0; c < a.family.size(); ++c) {
        const auto ca = core_complex(a.family.parts[c]), cb = core_complex(b.family.parts[c]);
        CHECK(cb.size() > ca.size());
        CHECK(assoc_graded_homology(ca) == assoc_graded_homology(cb));
        CHECK(d_invariant(ca) == d_invariant(cb));
      }
    }
  }
}

TEST_CASE("windows contain the nodes whose maps are not isomorphisms") {
  const KnotFamily t = brieskorn_fiber_family({2, 3, 7});
  const auto classes = surgery_classes(t, -1);
  const auto w = surgery_windows(t, classes, -1, 0);
  REQUIRE(w.size() == 1);
  CHECK(w[0].a_lo <= w[0].k_a);
  CHECK(w[0].a_hi >= w[0].k_b);
  CHECK(w[0].h_lo <= w[0].a_lo);
  CHECK(w[0].h_hi >= w[0].a_hi);
  CHECK(w[0].in_core(w[0].a_hi + 1, false));
  CHECK_FALSE(w[0].in_core(w[0].a_hi + 1, true));
  CHECK_THROWS_AS(surgery_window(t, classes[0], -1, -1), InputError);
}

TEST_CASE("locate_class inverts the class parametrisation") {
  const KnotFamily two = build_lattice_family(graph("minus_two.txt"));
  const Rational s(-3, 2);
  const auto classes = surgery_classes(two, s);
  for (size_t ci = 0; ci < classes.size(); ++ci)
    for (int64_t k = -4; k <= 4; ++k) {
      const auto [c2, k2] = locate_class(classes, two, s, classes[ci].t_at(k), classes[ci].i_at(k, s));
      CHECK(c2 == static_cast<int>(ci));
      CHECK(k2 == k);
    }
}

TEST_CASE("verify_surgery on the trefoil") {
  const auto g = graph("trefoil.txt");
  for (int64_t n : {-7, -8, -9}) {
    CAPTURE(n);
    const auto rep = verify_surgery(g, n);
    CHECK(rep.pass);
    CHECK(rep.first_discrepancy.empty());
    CHECK(rep.det == -(n + 6));
    CHECK(rep.cells_checked > 0);
    for (const auto& row : rep.rows) {
      CHECK(row.d_direct == row.d_assembled);
      CHECK(row.ranks_equal);
    }
  }
  // -1 surgery on the trefoil is Sigma(2,3,7), whose d-invariant is 0.
  const auto rep = verify_surgery(g, -7);
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].d_assembled == 0);
}

TEST_CASE("verify_surgery on small graphs") {
  CHECK(verify_surgery(graph("minus_two.txt"), -3).pass);
  CHECK(verify_surgery(graph("minus_two.txt"), -5).pass);
  CHECK(verify_surgery(graph("unknot.txt"), -2).pass);
  CHECK_THROWS_AS(verify_surgery(graph("trefoil.txt"), -6), InputError);
}

TEST_CASE("surgery summaries") {
  const auto res = surgery(brieskorn_fiber_family({2, 3}), -2);
  const auto rows = summarize(res.family);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK(r.total_rank == 1);
    CHECK(r.d.has_value());
  }
  CHECK(summary_tsv(rows).rfind("class\tcells\talexander_min", 0) == 0);
}
