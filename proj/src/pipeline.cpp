#include "lattice/pipeline.hpp"

#include "lattice/io.hpp"
#include "lattice/reduction.hpp"
#include "lattice/surgery.hpp"

#include <toml.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace lattice {

namespace {

std::string where(const toml::node& n) {
  const auto& src = n.source();
  return "line " + std::to_string(src.begin.line) + ": ";
}

std::string need_string(const toml::table& t, const std::string& key) {
  const auto v = t[key].value<std::string>();
  if (!v) throw InputError(where(t) + "missing string field '" + key + "'");
  return *v;
}

const KnotFamily& lookup(const PipelineResult& r, const std::string& name, const toml::node& at) {
  const auto it = r.knots.find(name);
  if (it == r.knots.end()) throw InputError(where(at) + "unknown knot '" + name + "'");
  return it->second;
}

std::vector<std::string> string_list(const toml::table& t, const std::string& key) {
  const auto* arr = t[key].as_array();
  if (!arr) throw InputError(where(t) + "missing list field '" + key + "'");
  std::vector<std::string> out;
  for (const auto& v : *arr) {
    const auto s = v.value<std::string>();
    if (!s) throw InputError(where(t) + "'" + key + "' must list strings");
    out.push_back(*s);
  }
  return out;
}

KnotFamily load_knot(const std::string& name, const toml::table& entry, const std::string& base_dir) {
  if (const auto* arr = entry["line"].as_array()) {
    IntVec p;
    for (const auto& v : *arr) {
      const auto x = v.value<int64_t>();
      if (!x) throw InputError(where(entry) + "line exponents must be integers");
      p.push_back(*x);
    }
    KnotFamily f = brieskorn_fiber_family(p);
    f.name = name;
    return f;
  }
  if (const auto g = entry["graph"].value<std::string>()) {
    const std::filesystem::path path = std::filesystem::path(base_dir) / *g;
    KnotFamily f = build_lattice_family(read_graph_file(path.string()));
    f.name = name;
    return f;
  }
  throw InputError(where(entry) + "knot '" + name + "' needs 'line' or 'graph'");
}

void report_item(PipelineResult& r, const std::string& item, const toml::node& at) {
  const auto colon = item.find(':');
  if (colon == std::string::npos) throw InputError(where(at) + "report item '" + item + "' must be KIND:NAME");
  const std::string kind = item.substr(0, colon), name = item.substr(colon + 1);
  const KnotFamily& f = lookup(r, name, at);
  std::ostringstream os;
  if (kind == "classes") {
    os << name << " classes " << f.size() << '\n';
  } else if (kind == "check") {
    const auto e = check_family(f);
    os << name << " check " << (e ? "FAIL " + *e : std::string("ok")) << '\n';
  } else if (kind == "alexander") {
    os << "# " << name << " alexander range\nclass\tmin\tmax\n";
    for (const auto& p : f.parts) {
      const auto [lo, hi] = alexander_range(core_complex(p));
      os << p.label << '\t' << to_string(lo) << '\t' << to_string(hi) << '\n';
    }
  } else if (kind == "genus") {
    for (const auto& p : f.parts) {
      const auto [top, rank] = assoc_graded_homology(core_complex(p)).top();
      os << name << ' ' << p.label << " genus " << to_string(top) << " rank " << rank << '\n';
    }
  } else if (kind == "summary") {
    os << "# " << name << '\n' << summary_tsv(summarize(f));
  } else {
    throw InputError(where(at) + "unknown report kind '" + kind + "'");
  }
  r.report += os.str();
}

}  // namespace

PipelineResult run_pipeline(const std::string& toml_text, const std::string& base_dir) {
  toml::table doc;
  try {
    doc = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << "pipeline parse error at line " << e.source().begin.line << ": " << e.description();
    throw InputError(os.str());
  }
  PipelineResult r;
  if (const auto* knots = doc["knot"].as_table())
    for (const auto& [key, node] : *knots) {
      const auto* entry = node.as_table();
      if (!entry) throw InputError("knot '" + std::string(key.str()) + "' must be a table");
      r.knots[std::string(key.str())] = load_knot(std::string(key.str()), *entry, base_dir);
    }
  const auto* steps = doc["step"].as_array();
  if (!steps) return r;
  for (const auto& node : *steps) {
    const auto* st = node.as_table();
    if (!st) throw InputError("each step must be a table");
    const std::string op = need_string(*st, "op");
    if (op == "surgery") {
      const KnotFamily& in = lookup(r, need_string(*st, "input"), *st);
      Rational s;
      if (const auto q = (*st)["seifert"].value<std::string>())
        s = parse_rational(*q);
      else if (const auto qi = (*st)["seifert"].value<int64_t>())
        s = Rational(*qi);
      else if (const auto n = (*st)["framing"].value<int64_t>())
        s = framing_to_seifert(*n, in.sigma0_sq);
      else
        throw InputError(where(*st) + "surgery needs 'framing' or 'seifert'");
      const int slack = static_cast<int>((*st)["slack"].value_or<int64_t>(0));
      const std::string out = need_string(*st, "output");
      auto res = surgery(in, s, slack);
      if (!res.note.empty()) r.notes.push_back(out + ": " + res.note);
      res.family.name = out;
      r.seifert[out] = s;
      r.knots[out] = std::move(res.family);
    } else if (op == "tensor") {
      const auto names = string_list(*st, "inputs");
      if (names.empty()) throw InputError(where(*st) + "tensor needs at least one input");
      KnotFamily acc = lookup(r, names[0], *st);
      for (size_t k = 1; k < names.size(); ++k) acc = tensor_family(acc, lookup(r, names[k], *st));
      const std::string out = need_string(*st, "output");
      acc.name = out;
      r.knots[out] = std::move(acc);
    } else if (op == "restrict") {
      const KnotFamily& in = lookup(r, need_string(*st, "input"), *st);
      std::vector<int> keep;
      for (const auto& label : string_list(*st, "keep")) {
        int found = -1;
        for (size_t t = 0; t < in.size(); ++t)
          if (in.parts[t].label == label) found = static_cast<int>(t);
        if (found < 0) throw InputError(where(*st) + "no part labelled " + label);
        keep.push_back(found);
      }
      const std::string out = need_string(*st, "output");
      r.knots[out] = restrict_family(in, keep);
      r.knots[out].name = out;
    } else if (op == "report") {
      for (const auto& item : string_list(*st, "items")) report_item(r, item, *st);
    } else {
      throw InputError(where(*st) + "unknown op '" + op + "'");
    }
  }
  return r;
}

PipelineResult run_pipeline_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return run_pipeline(ss.str(), std::filesystem::path(path).parent_path().string());
}

}  // namespace lattice
