#include "lattice/homology.hpp"
#include "lattice/pipeline.hpp"
#include "lattice/reduction.hpp"
#include "support/paths.hpp"

#include <doctest.h>

using namespace lattice;

namespace {

std::string error_of(const std::string& text) {
  try {
    run_pipeline(text, ".");
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("connected sum of -2 and -3 surgeries on the trefoil") {
  const auto r = run_pipeline(R"(
[knot.T]
line = [2, 3]
[[step]]
op = "surgery"
input = "T"
seifert = -2
output = "m2"
[[step]]
op = "surgery"
input = "T"
seifert = "-3"
output = "m3"
[[step]]
op = "tensor"
inputs = ["m2", "m3"]
output = "sum"
)",
                              ".");
  const auto& sum = r.knots.at("sum");
  REQUIRE(sum.size() == 6);
  CHECK_FALSE(check_family(sum));
  const std::map<std::string, std::pair<Rational, Rational>> expect = {
      {"[0,0]", {Rational(-7, 12), Rational(17, 12)}}, {"[1,0]", {Rational(-13, 12), Rational(11, 12)}},
      {"[0,1]", {Rational(-1, 4), Rational(3, 4)}},    {"[1,1]", {Rational(-3, 4), Rational(1, 4)}},
      {"[0,2]", {Rational(-11, 12), Rational(13, 12)}}, {"[1,2]", {Rational(-17, 12), Rational(7, 12)}}};
  for (const auto& p : sum.parts) {
    CAPTURE(p.label);
    REQUIRE(expect.count(p.label));
    CHECK(alexander_range(core_complex(p)) == expect.at(p.label));
  }
  CHECK(sum.sigma0_sq == Rational(-5, 6));
  CHECK(r.seifert.at("m2") == -2);
}

TEST_CASE("the full iterated example reaches Alexander grading 6") {
  const auto r = run_pipeline_file(test_data::pipeline("iterated.toml"));
  const auto& f = r.knots.at("final");
  CHECK(r.seifert.at("final") == Rational(-1, 6));
  REQUIRE(f.size() == 1);
  const auto core = core_complex(f.parts[0]);
  CHECK(assoc_graded_homology(core).top() == std::pair<Rational, int64_t>{6, 1});
  CHECK(unfiltered_rank(core) == 1);
  CHECK(d_invariant(core) == 0);
  CHECK(r.report.find("final check ok") != std::string::npos);
  CHECK(r.notes.empty());
}

TEST_CASE("identity script leaves the knots unchanged") {
  const auto r = run_pipeline("[knot.T]\nline = [2, 3]\n", ".");
  const auto t = brieskorn_fiber_family({2, 3});
  REQUIRE(r.knots.count("T"));
  CHECK(assoc_graded_homology(core_complex(r.knots.at("T").parts[0])) ==
        assoc_graded_homology(core_complex(t.parts[0])));
  CHECK(r.report.empty());
}

TEST_CASE("graph knots, restriction and reports") {
  const auto r = run_pipeline(R"(
[knot.G]
graph = "minus_two.txt"
[[step]]
op = "restrict"
input = "G"
keep = ["[0]"]
output = "R"
[[step]]
op = "report"
items = ["classes:G", "genus:G", "summary:G", "check:R", "alexander:G"]
)",
                              std::string(LATTICE_TEST_DATA) + "/graphs");
  CHECK(r.knots.at("R").size() == 1);
  CHECK(r.report.find("G classes 2") != std::string::npos);
  CHECK(r.report.find("R check ok") != std::string::npos);
}

TEST_CASE("pipeline errors carry line numbers") {
  CHECK(error_of("[knot.T\n").find("parse error at line 1") != std::string::npos);
  CHECK(error_of("[knot.T]\nline = [2, 4]\n").find("coprime") != std::string::npos);
  CHECK(error_of("[[step]]\nop = \"surgery\"\ninput = \"X\"\nseifert = -1\noutput = \"Y\"\n").find("unknown knot 'X'") !=
        std::string::npos);
  CHECK(error_of("[knot.T]\nline = [2, 3]\n[[step]]\nop = \"twist\"\n").find("unknown op 'twist'") !=
        std::string::npos);
  CHECK(error_of("[knot.T]\nline = [2, 3]\n[[step]]\nop = \"surgery\"\ninput = \"T\"\noutput = \"Y\"\n")
            .find("needs 'framing' or 'seifert'") != std::string::npos);
  CHECK(error_of("[knot.T]\nline = [2, 3]\n[[step]]\nop = \"surgery\"\ninput = \"T\"\nseifert = 1\noutput = \"Y\"\n")
            .find("negative") != std::string::npos);
  CHECK(error_of("[knot.T]\n").find("needs 'line' or 'graph'") != std::string::npos);
  CHECK(error_of("[knot.T]\nline = [2, 3]\n[[step]]\nop = \"report\"\nitems = [\"size:T\"]\n")
            .find("unknown report kind") != std::string::npos);
  CHECK_THROWS_AS(run_pipeline_file("/nonexistent/pipeline.toml"), InputError);
}
