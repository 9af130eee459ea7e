#include "lattice/io.hpp"
#include "lattice/pipeline.hpp"
#include "lattice/reduction.hpp"
#include "lattice/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace lattice;
using nlohmann::json;

struct RunConfig {
  std::string graph;
  IntVec exponents;
  std::optional<int64_t> framing;
  std::string seifert;
  int slack = 0;
  int64_t n_max = 0;
  std::string out_dir;
  std::string format = "tsv";
  std::string line_format = "json";
  std::string pipeline;
  bool verify = false;
  bool oracle = false;
  bool simplify = false;
  bool hull = false;
  bool check = false;
};

std::string join(const IntVec& v, const char* sep) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

PlumbingGraph load_graph(const std::string& path) {
  PlumbingGraph g = read_graph_file(path);
  validate_graph(g);
  return g;
}

// Knot family from --graph or from Brieskorn exponents.
KnotFamily load_family(const RunConfig& cfg) {
  if (!cfg.graph.empty() && !cfg.exponents.empty()) throw InputError("give either --graph or exponents, not both");
  if (!cfg.graph.empty()) return build_lattice_family(load_graph(cfg.graph));
  if (!cfg.exponents.empty()) return brieskorn_fiber_family(cfg.exponents);
  throw InputError("a knot is needed: --graph FILE or exponents");
}

int cmd_check(const RunConfig& cfg) {
  const PlumbingGraph g = read_graph_file(cfg.graph);
  validate_graph(g);
  const PlumbingGraph base = weighted_part(g);
  const bool negdef = is_negative_definite(base);
  const auto form = intersection_form(base);
  std::cout << g.size() << " vertices, forest, " << (negdef ? "neg-def" : "not neg-def") << " (core), det(core)="
            << abs(form.det);
  std::optional<SpinCStructures> y;
  if (negdef) {
    y.emplace(base);
    std::cout << ", " << y->orbits().size() << " Spin^c";
  }
  std::cout << '\n';
  std::cout << "weighted\t" << base.size() << '\n';
  std::cout << "knot\t" << (g.has_v0() ? g.ids[*g.v0()] : std::string("-")) << '\n';
  std::cout << "components\t" << weighted_components(base).size() << '\n';
  if (negdef) {
    std::cout << "z_min\t" << join(minimal_cycle_per_component(base).z, " ") << '\n';
    if (g.has_v0()) {
      const KnotGrading kg(g);
      std::cout << "sigma0_sq\t" << to_string(kg.sigma0_sq()) << '\n';
      std::cout << "subcontractible\t" << (is_subcontractible_knot(g) ? "yes" : "no") << '\n';
    }
  }
  return negdef ? 0 : 2;
}

int cmd_lattice(const RunConfig& cfg) {
  const PlumbingGraph base = weighted_part(load_graph(cfg.graph));
  if (!is_negative_definite(base)) throw InputError("graph is not negative definite");
  const SpinCStructures y(base);
  json rows = json::array();
  std::ostringstream tsv;
  tsv << "spinc\tk\tcells\trank\td\n";
  for (size_t t = 0; t < y.orbits().size(); ++t) {
    const Box box = certified_box(base, y, static_cast<int>(t));
    const auto lc = build_lattice_complex(y, static_cast<int>(t), box);
    const int64_t rank = unfiltered_rank(lc.complex);
    const std::string d = rank == 1 ? to_string(d_invariant(lc.complex)) : "-";
    tsv << t << '\t' << join(y.rep(static_cast<int>(t)), ",") << '\t' << lc.complex.size() << '\t' << rank << '\t' << d
        << '\n';
    rows.push_back({{"spinc", t}, {"k", y.rep(static_cast<int>(t))}, {"box_lo", box.lo}, {"box_hi", box.hi},
                    {"cells", lc.complex.size()}, {"rank", rank}, {"d", d}});
    if (!cfg.out_dir.empty())
      write_file(std::filesystem::path(cfg.out_dir) / ("lattice_" + std::to_string(t) + ".json"),
                 complex_json(lc.complex));
  }
  std::cout << (cfg.format == "json" ? rows.dump(2) + "\n" : tsv.str());
  return 0;
}

void emit_family(const KnotFamily& f, const RunConfig& cfg) {
  const auto rows = summarize(f);
  if (cfg.format == "json") {
    json out = json::array();
    for (const auto& s : rows)
      out.push_back({{"class", s.label},
                     {"cells", s.cells},
                     {"alexander_min", to_string(s.a_min)},
                     {"alexander_max", to_string(s.a_max)},
                     {"top_alexander", to_string(s.top)},
                     {"top_rank", s.top_rank},
                     {"rank", s.total_rank},
                     {"d", s.d ? to_string(*s.d) : "-"}});
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << summary_tsv(rows);
  }
  if (!cfg.out_dir.empty()) {
    const std::filesystem::path dir(cfg.out_dir);
    std::filesystem::create_directories(dir);
    write_file(dir / "summary.tsv", summary_tsv(rows));
    for (size_t t = 0; t < f.size(); ++t)
      write_file(dir / ("part_" + std::to_string(t) + ".json"), complex_json(f.parts[t].x));
  }
}

int report_check(const KnotFamily& f) {
  const auto e = check_family(f);
  std::cerr << "check " << (e ? "FAIL " + *e : std::string("ok")) << '\n';
  return e ? 1 : 0;
}

int cmd_knotlattice(const RunConfig& cfg) {
  const KnotFamily f = build_lattice_family(load_graph(cfg.graph));
  emit_family(f, cfg);
  return cfg.check ? report_check(f) : 0;
}

int cmd_tau(const RunConfig& cfg) {
  if (cfg.exponents.empty()) throw InputError("tau needs exponents");
  if (cfg.n_max < 0) throw InputError("--n must be non-negative");
  const TauFunction tau = tau_closed_form(cfg.exponents);
  const FilteredLine l = ar_line(cfg.exponents);
  std::vector<int64_t> oracle;
  if (cfg.oracle) oracle = tau_lattice_oracle(brieskorn_star(cfg.exponents, true), 0, cfg.n_max);
  std::cout << "n\ttau\tdelta\th1\th2" << (cfg.oracle ? "\toracle" : "") << '\n';
  int status = 0;
  for (int64_t n = 0; n <= cfg.n_max; ++n) {
    const auto [h1, h2] = ar_line_heights(cfg.exponents, l.hu_kt, n);
    std::cout << n << '\t' << tau(n) << '\t' << tau.delta(n) << '\t' << to_string(h1) << '\t' << to_string(h2);
    if (cfg.oracle) {
      std::cout << '\t' << oracle[n];
      if (oracle[n] != tau(n)) status = 1;
    }
    std::cout << '\n';
  }
  if (status) std::cerr << "closed form differs from the lattice oracle\n";
  return status;
}

int cmd_line(const RunConfig& cfg) {
  IntVec p = cfg.exponents;
  if (!cfg.graph.empty()) {
    if (!p.empty()) throw InputError("give either --graph or exponents, not both");
    p = brieskorn_exponents(load_graph(cfg.graph));
  }
  if (p.empty()) throw InputError("line needs exponents or --graph");
  FilteredLine l = cfg.hull ? ar_line_hull(p) : ar_line(p);
  if (cfg.simplify) {
    auto r = simplify_line(l);
    if (!r.warning.empty()) std::cerr << r.warning << '\n';
    l = std::move(r.line);
  }
  std::cout << (cfg.line_format == "json" ? line_json(l) + "\n" : line_tsv(l));
  return 0;
}

int cmd_invariants(const RunConfig& cfg) {
  const KnotFamily f = load_family(cfg);
  for (const auto& p : f.parts) {
    const FilteredComplex core = core_complex(p);
    const auto [top, rank] = assoc_graded_homology(core).top();
    std::cout << p.label << " genus " << to_string(top) << ", top rank " << rank;
    if (unfiltered_rank(core) == 1) std::cout << ", d " << to_string(d_invariant(core));
    std::cout << '\n';
  }
  if (cfg.format == "json" || !cfg.out_dir.empty()) emit_family(f, cfg);
  return 0;
}

int cmd_surgery(const RunConfig& cfg) {
  if (cfg.framing.has_value() == !cfg.seifert.empty()) throw InputError("give exactly one of --framing and --seifert");
  if (cfg.verify && (cfg.graph.empty() || !cfg.framing))
    throw InputError("--verify needs --graph and --framing");
  const KnotFamily in = load_family(cfg);
  const Rational s = cfg.framing ? framing_to_seifert(*cfg.framing, in.sigma0_sq) : parse_rational(cfg.seifert);
  const SurgeryResult res = surgery(in, s, cfg.slack);
  std::cerr << "seifert framing " << to_string(s) << ", " << res.parts.size() << " classes\n";
  if (!res.note.empty()) std::cerr << res.note << '\n';
  emit_family(res.family, cfg);
  int status = 0;
  if (cfg.verify) {
    const VerifyReport rep = verify_surgery(load_graph(cfg.graph), *cfg.framing, cfg.slack);
    std::cerr << "verify " << (rep.pass ? "pass" : "FAIL " + rep.first_discrepancy) << '\n';
    if (!cfg.out_dir.empty()) write_file(std::filesystem::path(cfg.out_dir) / "verify.json", verify_json(rep));
    if (!rep.pass) status = 1;
  }
  if (cfg.check && report_check(res.family)) status = 1;
  return status;
}

int cmd_iterate(const RunConfig& cfg) {
  const PipelineResult r = run_pipeline_file(cfg.pipeline);
  for (const auto& n : r.notes) std::cerr << n << '\n';
  std::cout << r.report;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice, knot lattice and surgery complexes of plumbed 3-manifolds"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "tsv"}));
  };

  auto* check = app.add_subcommand("check", "Validate a plumbing graph");
  check->add_option("graph", cfg.graph, "Graph file")->required();

  auto* lat = app.add_subcommand("lattice", "Lattice complexes of the 3-manifold, one per Spin^c structure");
  lat->add_option("graph", cfg.graph, "Graph file")->required();
  lat->add_option("--out", cfg.out_dir, "Directory for complex JSON files");
  add_format(lat);

  auto* knot = app.add_subcommand("knotlattice", "Knot lattice family of the unweighted vertex");
  knot->add_option("graph", cfg.graph, "Graph file")->required();
  knot->add_option("--out", cfg.out_dir, "Directory for summary and complex files");
  knot->add_flag("--check", cfg.check, "Verify the structural maps");
  add_format(knot);

  auto* tau = app.add_subcommand("tau", "Tau function and line heights of a Brieskorn sphere");
  tau->add_option("exponents", cfg.exponents, "Pairwise coprime exponents")->required();
  tau->add_option("--n", cfg.n_max, "Largest index")->required();
  tau->add_flag("--oracle", cfg.oracle, "Compare with the lattice minimization");

  auto* line = app.add_subcommand("line", "Filtered line of the regular fiber");
  line->add_option("exponents", cfg.exponents, "Pairwise coprime exponents");
  line->add_option("--graph", cfg.graph, "Star graph with the unweighted vertex on its center");
  line->add_flag("--simplify", cfg.simplify, "Keep joint extrema only");
  line->add_flag("--hull", cfg.hull, "Extend to the I-closed hull");
  line->add_option("--format", cfg.line_format, "Output format")->check(CLI::IsMember({"json", "tsv"}));

  auto* surg = app.add_subcommand("surgery", "Surgery formula on the knot");
  surg->add_option("exponents", cfg.exponents, "Brieskorn exponents of a regular fiber");
  surg->add_option("--graph", cfg.graph, "Graph file with an unweighted vertex");
  surg->add_option("--framing", cfg.framing, "Graph framing of the knot vertex");
  surg->add_option("--seifert", cfg.seifert, "Seifert framing p/q");
  surg->add_option("--slack", cfg.slack, "Extra window nodes on each side")->check(CLI::NonNegativeNumber);
  surg->add_option("--out", cfg.out_dir, "Directory for summary and complex files");
  surg->add_flag("--verify", cfg.verify, "Compare with the lattice complex of the filled graph");
  surg->add_flag("--check", cfg.check, "Verify the structural maps of the dual knot");
  add_format(surg);

  auto* inv = app.add_subcommand("invariants", "d-invariants, Alexander range and genus of a knot");
  inv->add_option("exponents", cfg.exponents, "Brieskorn exponents of a regular fiber");
  inv->add_option("--graph", cfg.graph, "Graph file with an unweighted vertex");
  inv->add_option("--out", cfg.out_dir, "Directory for summary and complex files");
  add_format(inv);

  auto* iter = app.add_subcommand("iterate", "Run a pipeline script");
  iter->add_option("pipeline", cfg.pipeline, "TOML pipeline file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (check->parsed()) return cmd_check(cfg);
    if (lat->parsed()) return cmd_lattice(cfg);
    if (knot->parsed()) return cmd_knotlattice(cfg);
    if (tau->parsed()) return cmd_tau(cfg);
    if (line->parsed()) return cmd_line(cfg);
    if (surg->parsed()) return cmd_surgery(cfg);
    if (inv->parsed()) return cmd_invariants(cfg);
    if (iter->parsed()) return cmd_iterate(cfg);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ComputationError& e) {
    std::cerr << "computation error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
