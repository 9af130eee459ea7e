#include "lattice/io.hpp"

#include <json.hpp>

#include <sstream>

namespace lattice {

using nlohmann::json;

std::string complex_json(const FilteredComplex& x, int indent) {
  json cells = json::array();
  for (size_t c = 0; c < x.size(); ++c) {
    json cell;
    cell["label"] = std::vector<int64_t>(x.label(c).begin(), x.label(c).end());
    cell["mask"] = x.mask(c);
    cell["dim"] = x.dim(c);
    cell["h1"] = to_string(x.h1(c));
    if (x.doubly()) cell["h2"] = to_string(x.h2(c));
    cell["boundary"] = std::vector<int64_t>(x.boundary(c).begin(), x.boundary(c).end());
    cells.push_back(std::move(cell));
  }
  json out;
  out["tag"] = x.tag;
  out["doubly"] = x.doubly();
  out["ncoords"] = x.ncoords();
  out["ndirs"] = x.ndirs();
  out["cells"] = std::move(cells);
  return out.dump(indent);
}

std::string line_json(const FilteredLine& l, int indent) {
  json out;
  auto strs = [](const std::vector<Rational>& v) {
    std::vector<std::string> s;
    for (const auto& r : v) s.push_back(to_string(r));
    return s;
  };
  out["n"] = l.n;
  out["h1"] = strs(l.h1);
  out["h2"] = strs(l.h2);
  out["e1"] = strs(l.e1);
  out["e2"] = strs(l.e2);
  out["alpha"] = l.alpha;
  out["gamma"] = l.gamma;
  out["support"] = {l.lo(), l.hi()};
  out["I_center"] = l.i_center;
  out["J_center"] = l.j_center;
  out["Gamma_shift"] = l.gamma_shift;
  out["hu_kt"] = to_string(l.hu_kt);
  out["notes"] = l.notes;
  return out.dump(indent);
}

std::string ranks_json(const BigradedRanks& r, int indent) {
  json rows = json::array();
  for (const auto& [k, v] : r.table)
    rows.push_back({{"maslov", to_string(k.first)}, {"alexander", to_string(k.second)}, {"rank", v}});
  return rows.dump(indent);
}

std::string verify_json(const VerifyReport& r, int indent) {
  json out;
  out["pass"] = r.pass;
  out["first_discrepancy"] = r.first_discrepancy;
  out["seifert_framing"] = to_string(r.s);
  out["det"] = r.det;
  out["classes"] = r.classes;
  out["cells_checked"] = r.cells_checked;
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"class", row.label},
                    {"spinc", row.orbit},
                    {"cells", row.cells},
                    {"d_direct", to_string(row.d_direct)},
                    {"d_assembled", to_string(row.d_assembled)},
                    {"rank_direct", row.rank_direct},
                    {"rank_assembled", row.rank_assembled},
                    {"ranks_equal", row.ranks_equal}});
  out["rows"] = std::move(rows);
  return out.dump(indent);
}

std::string line_tsv(const FilteredLine& l) {
  std::ostringstream os;
  os << "n\th1\th2\n";
  for (size_t j = 0; j < l.n.size(); ++j) os << l.n[j] << '\t' << to_string(l.h1[j]) << '\t' << to_string(l.h2[j]) << '\n';
  return os.str();
}

std::string ranks_tsv(const BigradedRanks& r) {
  std::ostringstream os;
  os << "maslov\talexander\trank\n";
  for (const auto& [k, v] : r.table) os << to_string(k.first) << '\t' << to_string(k.second) << '\t' << v << '\n';
  return os.str();
}

std::vector<PartSummary> summarize(const KnotFamily& f) {
  std::vector<PartSummary> out;
  for (const auto& p : f.parts) {
    PartSummary s;
    s.label = p.label;
    const FilteredComplex core = core_complex(p);
    s.cells = core.size();
    std::tie(s.a_min, s.a_max) = alexander_range(core);
    const auto ranks = assoc_graded_homology(core);
    s.total_rank = unfiltered_rank(core);
    std::tie(s.top, s.top_rank) = ranks.top();
    if (s.total_rank == 1) s.d = d_invariant(core);
    out.push_back(std::move(s));
  }
  return out;
}

std::string summary_tsv(const std::vector<PartSummary>& rows) {
  std::ostringstream os;
  os << "class\tcells\talexander_min\talexander_max\ttop_alexander\ttop_rank\trank\td\n";
  for (const auto& s : rows)
    os << s.label << '\t' << s.cells << '\t' << to_string(s.a_min) << '\t' << to_string(s.a_max) << '\t'
       << to_string(s.top) << '\t' << s.top_rank << '\t' << s.total_rank << '\t' << (s.d ? to_string(*s.d) : "-")
       << '\n';
  return os.str();
}

}  // namespace lattice
