#include "lattice/grading.hpp"
#include "support/oracles.hpp"
#include "support/paths.hpp"

#include <doctest.h>

#include <functional>
#include <random>
#include <set>

using namespace lattice;

namespace {

PlumbingGraph graph(const char* name) { return read_graph_file(test_data::graph(name)); }

bool same_orbit(const RatMat& inv, const CharVector& a, const CharVector& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    Rational s = 0;
    for (size_t j = 0; j < a.size(); ++j) s += inv[i][j] * Rational(a[j] - b[j], 2);
    if (!is_integer(s)) return false;
  }
  return true;
}

// Every characteristic vector with entries in [-r, r].
std::vector<CharVector> char_vectors(const PlumbingGraph& g, int64_t r) {
  const auto q = intersection_matrix(g);
  std::vector<CharVector> out;
  CharVector k(q.size());
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == q.size()) {
      out.push_back(k);
      return;
    }
    for (int64_t c = -r; c <= r; ++c)
      if ((c - q[i][i]) % 2 == 0) {
        k[i] = c;
        rec(i + 1);
      }
  };
  rec(0);
  return out;
}

Rational random_rational(std::mt19937& rng, int span) {
  const int num = std::uniform_int_distribution<int>(-span, span)(rng);
  const int den = std::uniform_int_distribution<int>(1, 24)(rng);
  return Rational(num, den);
}

}  // namespace

TEST_CASE("grading_shift values") {
  CHECK(grading_shift(0, -2) == Rational(-1, 4));
  CHECK(grading_shift(-3, -3) == Rational(-1, 2));
  CHECK(grading_shift(0, -1) == 0);
  CHECK(grading_shift(1, -2) == Rational(-7, 4));
  CHECK_THROWS_AS(grading_shift(1, 0), InputError);
}

TEST_CASE("grading_shift identities on random rationals") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const Rational i = random_rational(rng, 200);
    Rational s = random_rational(rng, 60);
    if (s >= 0) s = -s - Rational(1, 7);
    CHECK(grading_shift(i, s) + 2 * i == grading_shift(i + s, s));
    CHECK(grading_shift(i, s) - grading_shift(-i, s) == -2 * i);
  }
}

TEST_CASE("grf values on small graphs") {
  const auto one = parse_graph("vertex c -1\n");
  const auto two = parse_graph("vertex c -2\n");
  CHECK(char_square({-1}, one) == -1);
  CHECK(grf_value({-1}, one) == 0);
  CHECK(char_square({0}, two) == 0);
  CHECK(grf_value({0}, two) == Rational(1, 4));
  CHECK(char_square(CharVector(8, 0), graph("e8.txt")) == 0);
  CHECK(is_characteristic({0}, two));
  CHECK_FALSE(is_characteristic({1}, two));
}

TEST_CASE("Spin^c orbit counts equal |det|") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 4)(rng);
    PlumbingGraph g;
    std::vector<int> deg(n, 0);
    for (int v = 1; v < n; ++v) {
      const int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
      g.edges.emplace_back(u, v);
      ++deg[u];
      ++deg[v];
    }
    for (int v = 0; v < n; ++v) {
      g.ids.push_back("v" + std::to_string(v));
      g.weights.push_back(-(deg[v] + 1) - std::uniform_int_distribution<int>(0, 3)(rng));
    }
    const SpinCStructures y(g);
    CHECK(BigInt(y.orbits().size()) == abs(determinant(intersection_matrix(g))));
  }
  CHECK(SpinCStructures(graph("e8.txt")).orbits().size() == 1);
  CHECK(SpinCStructures(weighted_part(graph("sigma237.txt"))).orbits().size() == 1);
  CHECK_THROWS_AS(SpinCStructures(parse_graph("vertex c 1\n")), InputError);
}

TEST_CASE("lens space L(2,1) representatives") {
  const SpinCStructures y(parse_graph("vertex c -2\n"));
  std::set<CharVector> reps;
  for (const auto& o : y.orbits()) reps.insert(o.rep);
  CHECK(reps == std::set<CharVector>{{0}, {-2}});
  const SpinCStructures s3(parse_graph("vertex c -1\n"));
  CHECK(s3.rep(0) == CharVector{-1});
}

TEST_CASE("descent is constant on orbits and idempotent") {
  for (const char* text : {"vertex a -2\n", "vertex a -3\nvertex b -2\nedge a b\n",
                           "vertex a -2\nvertex b -3\nvertex c -2\nedge a b\nedge b c\n",
                           "vertex a -1\nvertex b -2\nvertex c -3\nedge a b\nedge a c\n"}) {
    const auto g = parse_graph(text);
    const SpinCStructures y(g);
    const auto& inv = y.form_inverse();
    std::vector<CharVector> classes;
    for (const auto& k : char_vectors(g, 6)) {
      const CharVector kt = y.descend(k);
      CHECK(y.descend(kt) == kt);
      CHECK(same_orbit(inv, k, kt));
      CHECK(kt == y.rep(y.orbit_of(k)));
      bool seen = false;
      for (const auto& c : classes) seen |= same_orbit(inv, c, k);
      if (!seen) classes.push_back(k);
    }
    CHECK(classes.size() == y.orbits().size());
  }
}

TEST_CASE("conjugation preserves grf and is an involution") {
  for (const char* text : {"vertex a -5\n", "vertex a -3\nvertex b -4\nedge a b\n"}) {
    const SpinCStructures y(parse_graph(text));
    for (size_t t = 0; t < y.orbits().size(); ++t) {
      const int u = y.conj(static_cast<int>(t));
      CHECK(y.conj(u) == static_cast<int>(t));
      CHECK(y.grf(u) == y.grf(static_cast<int>(t)));
    }
  }
  const KnotGrading kg(graph("minus_two.txt"));
  for (int t = 0; t < 2; ++t)
    for (const Rational& i : {Rational(0), Rational(1, 3), Rational(-5, 2)}) {
      const SurgerySpinC s{t, i, Rational(-3, 2)};
      const auto c = kg.conjugate(kg.conjugate(s));
      const auto d = kg.translated_conjugate(kg.translated_conjugate(s));
      CHECK((c.t == s.t && c.i == s.i));
      CHECK((d.t == s.t && d.i == s.i));
    }
  const SurgerySpinC mid{0, Rational(-1), Rational(-2)};
  const auto m = kg.conjugate(mid);
  if (kg.conj(0) == 0) CHECK(m.i == mid.i);
  CHECK(kg.translated_conjugate({0, 0, Rational(-2)}).i == 0);
}

TEST_CASE("Alexander cosets") {
  const KnotGrading tre(graph("trefoil.txt"));
  CHECK(tre.alexander_coset(0) == 0);
  CHECK(tre.plus_k(0) == 0);
  const KnotGrading two(graph("minus_two.txt"));
  // grf is 1/4 and -1/4 on the two classes of L(2,1), and [K] swaps them.
  std::set<Rational> cosets;
  for (int t = 0; t < 2; ++t) {
    CHECK(two.plus_k(two.plus_k(t)) == t);
    cosets.insert(two.alexander_coset(t));
    CHECK(two.alexander_coset(t) == mod1((two.spinc().grf(t) - two.spinc().grf(two.plus_k(t))) / 2));
  }
  CHECK(cosets == std::set<Rational>{Rational(1, 4), Rational(3, 4)});
}

TEST_CASE("a_hat transforms affinely under the filled lattice") {
  const auto g = graph("trefoil.txt");
  const int64_t n = -8;
  const auto filled = fill(g, n);
  const Rational s = seifert_framing(g, n);
  const auto w = filled.weighted();
  const int v0 = *g.v0();
  const CharVector k = canonical_char(filled);
  const auto q = intersection_matrix(filled);
  for (size_t u = 0; u < w.size(); ++u) {
    CharVector k2 = k;
    for (size_t j = 0; j < w.size(); ++j) k2[j] += 2 * q[u][j];
    CHECK(a_hat(k2, g, n) == a_hat(k, g, n) + (w[u] == v0 ? s : Rational(0)));
  }
  // L(Sigma) for K_con: Sigma = v0 - Sigma0 evaluated against -w - 2 by hand.
  const auto s0 = sigma0(g);
  Rational ls = Rational(-n - 2);
  ls -= s0[0] * Rational(-1) + s0[1] * Rational(0) + s0[2] * Rational(1);
  CHECK(a_hat(k, g, n) == (ls + s) / 2);
}
