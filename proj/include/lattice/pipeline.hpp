#pragma once

#include "lattice/complex.hpp"

#include <map>
#include <string>
#include <vector>

namespace lattice {

// Declarative pipeline over named knot families.
//
//   [knot.T]            line = [2, 3]        regular fiber of a Brieskorn sphere
//   [knot.G]            graph = "file.txt"   lattice family of a graph with v0
//   [[step]] op = "surgery"  input, output, framing = n | seifert = "p/q", slack
//   [[step]] op = "tensor"   inputs = [...], output
//   [[step]] op = "restrict" input, keep = [labels], output
//   [[step]] op = "report"   items = ["summary:NAME", "alexander:NAME", "genus:NAME", "classes:NAME", "check:NAME"]
//
// Graph framings are converted to Seifert framings with the stored dual
// self-pairing of the input family.
struct PipelineResult {
  std::map<std::string, KnotFamily> knots;
  std::map<std::string, Rational> seifert;  // framing used to produce each surgery output
  std::vector<std::string> notes;
  std::string report;
};

PipelineResult run_pipeline(const std::string& toml_text, const std::string& base_dir);
PipelineResult run_pipeline_file(const std::string& path);

}  // namespace lattice
