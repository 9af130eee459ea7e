// Acceptance report: one PASS/FAIL line per criterion, with its time limit.

#include "lattice/homology.hpp"
#include "lattice/pipeline.hpp"
#include "lattice/reduction.hpp"
#include "lattice/verify.hpp"
#include "support/properties.hpp"

#include <array>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace lattice;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (!detail.empty()) detail += "; ";
    detail += why;
    ok = false;
  }
};

int failures = 0;

void run(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) o.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(limit_s) + " s");
  std::ostringstream os;
  os.precision(3);
  os << (o.ok ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << std::fixed << secs << " s, limit "
     << limit_s << " s)";
  if (!o.detail.empty()) os << " -- " << o.detail;
  std::cout << os.str() << std::endl;
  if (!o.ok) ++failures;
}

std::string q(const Rational& r) { return to_string(r); }

Outcome trefoil_line() {
  Outcome o;
  const auto l = ar_line({2, 3});
  if (l.n != std::vector<int64_t>{0, 1, 2}) o.fail("support is not [0,2]");
  const std::vector<Rational> h1{0, -2, -2}, h2{-2, -2, 0};
  if (l.h1 != h1 || l.h2 != h2) o.fail("heights differ from (0,-2),(-2,-2),(-2,0)");
  if (l.alpha != 6 || l.gamma != -5) o.fail("alpha, gamma = " + std::to_string(l.alpha) + ", " + std::to_string(l.gamma));
  const KnotFamily f = brieskorn_fiber_family({2, 3});
  const auto& x = f.parts[0].x;
  for (size_t c = 0; c < x.size(); ++c) {
    if (!f.parts[0].core[c] || x.dim(c) != 0) continue;
    const int64_t n = x.label(c)[0];
    if (x.label(f.gamma[0][c])[0] != n - 6) o.fail("Gamma(" + std::to_string(n) + ") != n - 6");
    if (x.label(f.inv_j[0][c])[0] != 2 - n) o.fail("J(" + std::to_string(n) + ") != 2 - n");
  }
  return o;
}

Outcome sigma237_line() {
  // Documented joint extrema, rows (n, h1, h2).
  static const std::vector<std::array<int64_t, 3>> rows = {
      {0, 0, -44},   {1, -2, -44},  {6, 0, -32},   {7, -2, -32},  {12, -2, -22}, {13, -4, -22}, {14, -4, -20},
      {15, -6, -20}, {18, -6, -14}, {19, -8, -14}, {20, -8, -12}, {22, -12, -2}, {24, -12, -8}, {25, -14, -8},
      {26, -14, -6}, {29, -20, -6}, {30, -20, -4}, {31, -22, -4}, {32, -22, -2}, {37, -32, -2}, {38, -32, 0},
      {43, -44, -2}, {44, -44, 0}};
  Outcome o;
  const auto l = ar_line({2, 3, 7});
  if (l.alpha != 42 || l.gamma != 1) o.fail("alpha, gamma differ");
  if (l.lo() != 0 || l.hi() != 44) o.fail("support is not [0,44]");
  const auto s = simplify_line(l).line;
  if (s.n.size() != rows.size()) {
    o.fail(std::to_string(s.n.size()) + " rows instead of 23");
  } else {
    int match = 0;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (s.n[r] == rows[r][0] && s.h1[r] == rows[r][1] && s.h2[r] == rows[r][2]) {
        ++match;
        continue;
      }
      o.fail("row n=" + std::to_string(s.n[r]) + " computed (" + q(s.h1[r]) + "," + q(s.h2[r]) + "), documented (" +
             std::to_string(rows[r][1]) + "," + std::to_string(rows[r][2]) + ")");
    }
    if (match != 23) o.detail += "; " + std::to_string(match) + "/23 rows match";
  }
  const auto top = assoc_graded_homology(line_complex(l)).top();
  if (top.first != 22 || top.second != 1) o.fail("genus " + q(top.first) + " rank " + std::to_string(top.second));
  return o;
}

Outcome tau_cross() {
  Outcome o;
  for (const IntVec& p : {IntVec{2, 3}, IntVec{2, 3, 5}, IntVec{2, 3, 7}}) {
    const int64_t alpha = alpha_gamma(p).alpha;
    const TauFunction tau(p);
    const auto oracle = tau_lattice_oracle(brieskorn_star(p, true), 0, 2 * alpha);
    for (int64_t n = 0; n <= 2 * alpha; ++n) {
      if (tau(n) != oracle[n]) o.fail("tau differs at n=" + std::to_string(n));
      if (tau.delta(n + alpha) != tau.delta(n) + 1) o.fail("step relation fails at n=" + std::to_string(n));
    }
  }
  return o;
}

Outcome verify_trefoil(int64_t n) {
  Outcome o;
  const auto rep = verify_surgery(read_graph_file(std::string(LATTICE_TEST_DATA) + "/graphs/trefoil.txt"), n);
  if (!rep.pass) o.fail(rep.first_discrepancy);
  o.detail = std::to_string(rep.classes) + " classes, " + std::to_string(rep.cells_checked) + " cells";
  return o;
}

Outcome iterated() {
  Outcome o;
  const auto r = run_pipeline_file(std::string(LATTICE_TEST_DATA) + "/pipelines/iterated.toml");
  const auto& sum = r.knots.at("sum");
  const std::map<std::string, std::pair<Rational, Rational>> expect = {
      {"[0,0]", {Rational(-7, 12), Rational(17, 12)}}, {"[1,0]", {Rational(-13, 12), Rational(11, 12)}},
      {"[0,1]", {Rational(-1, 4), Rational(3, 4)}},    {"[1,1]", {Rational(-3, 4), Rational(1, 4)}},
      {"[0,2]", {Rational(-11, 12), Rational(13, 12)}}, {"[1,2]", {Rational(-17, 12), Rational(7, 12)}}};
  if (sum.size() != 6) o.fail(std::to_string(sum.size()) + " classes on the intermediate manifold");
  for (const auto& p : sum.parts) {
    const auto it = expect.find(p.label);
    if (it == expect.end()) {
      o.fail("unexpected class " + p.label);
      continue;
    }
    const auto range = alexander_range(core_complex(p));
    if (range != it->second) o.fail(p.label + " range [" + q(range.first) + "," + q(range.second) + "]");
  }
  if (r.seifert.at("final") != Rational(-1, 6)) o.fail("final Seifert framing " + q(r.seifert.at("final")));
  const auto& f = r.knots.at("final");
  if (f.size() != 1) o.fail("final has " + std::to_string(f.size()) + " classes");
  const auto top = assoc_graded_homology(core_complex(f.parts[0])).top();
  if (top.first != 6) o.fail("top Alexander grading " + q(top.first));
  return o;
}

Outcome grading_checks() {
  Outcome o;
  if (grading_shift(0, -2) != Rational(-1, 4)) o.fail("grading_shift(0,-2)");
  if (grading_shift(-3, -3) != Rational(-1, 2)) o.fail("grading_shift(-3,-3)");
  std::mt19937 rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const Rational i(std::uniform_int_distribution<int>(-500, 500)(rng), std::uniform_int_distribution<int>(1, 30)(rng));
    const Rational s(-std::uniform_int_distribution<int>(1, 200)(rng), std::uniform_int_distribution<int>(1, 30)(rng));
    if (grading_shift(i, s) + 2 * i != grading_shift(i + s, s)) o.fail("shift identity at " + q(i) + ", " + q(s));
    if (grading_shift(i, s) - grading_shift(-i, s) != -2 * i) o.fail("antisymmetry at " + q(i) + ", " + q(s));
  }
  return o;
}

Outcome property_suite() {
  Outcome o;
  size_t n = 0;
  for (const auto& [name, f] : props::knot_catalog(LATTICE_TEST_DATA)) {
    ++n;
    if (auto e = props::family_violation(f)) o.fail(*e);
  }
  for (const IntVec& p : {IntVec{2, 3}, IntVec{2, 3, 7}}) {
    const auto l = ar_line(p);
    if (!(assoc_graded_homology(line_complex(simplify_line(l).line)) == assoc_graded_homology(line_complex(l))))
      o.fail("simplify_line changes homology");
  }
  const KnotFamily t = brieskorn_fiber_family({2, 3});
  for (int s : {-1, -2, -3}) {
    const auto a = surgery(t, s, 0), b = surgery(t, s, 1);
    for (size_t c = 0; c < a.family.size(); ++c) {
      const auto ca = core_complex(a.family.parts[c]), cb = core_complex(b.family.parts[c]);
      if (!(assoc_graded_homology(ca) == assoc_graded_homology(cb)) || d_invariant(ca) != d_invariant(cb))
        o.fail("slack changes invariants at s=" + std::to_string(s));
    }
  }
  o.detail = std::to_string(n) + " families" + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

}  // namespace

int main() {
  run(1, "trefoil line model", 1, trefoil_line);
  run(2, "Sigma(2,3,7) regular fiber table and genus", 5, sigma237_line);
  run(3, "tau closed form against the lattice oracle", 30, tau_cross);
  for (int64_t n : {-7, -8, -9})
    run(4, "surgery verification, trefoil n=" + std::to_string(n), 60, [n] { return verify_trefoil(n); });
  run(5, "iterated surgery and connected sum", 300, iterated);
  run(6, "grading micro-checks", 1, grading_checks);
  run(7, "property suite", 120, property_suite);
  return failures == 0 ? 0 : 1;
}
