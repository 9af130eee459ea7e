#include "lattice/plumbing.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace lattice {

std::optional<int> PlumbingGraph::v0() const {
  for (int i = 0; i < size(); ++i)
    if (!weights[i]) return i;
  return std::nullopt;
}

int PlumbingGraph::index_of(const std::string& id) const {
  for (int i = 0; i < size(); ++i)
    if (ids[i] == id) return i;
  return -1;
}

std::vector<int> PlumbingGraph::weighted() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (weights[i]) out.push_back(i);
  return out;
}

std::vector<std::vector<int>> PlumbingGraph::adjacency() const {
  std::vector<std::vector<int>> adj(size());
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

std::string at(int line, int col) {
  return "line " + std::to_string(line) + ", column " + std::to_string(col) + ": ";
}

struct Token {
  std::string text;
  int col;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#') ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

bool parse_int(const std::string& s, int64_t& out) {
  if (s.empty()) return false;
  size_t pos = 0;
  try {
    out = std::stoll(s, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == s.size();
}

void add_edge(PlumbingGraph& g, int a, int b, const std::string& where) {
  if (a == b) throw InputError(where + "self-loop at '" + g.ids[a] + "' (cycle detected)");
  g.edges.emplace_back(std::min(a, b), std::max(a, b));
}

PlumbingGraph parse_json_graph(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("JSON syntax error: ") + e.what());
  }
  auto id_of = [](const nlohmann::json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<int64_t>());
    throw InputError("vertex ids must be strings or integers");
  };
  PlumbingGraph g;
  if (!j.is_object() || !j.contains("vertices")) throw InputError("JSON graph needs a \"vertices\" array");
  for (const auto& v : j.at("vertices")) {
    if (!v.is_object() || !v.contains("id")) throw InputError("each vertex needs an \"id\"");
    const std::string id = id_of(v.at("id"));
    if (g.index_of(id) >= 0) throw InputError("duplicate vertex '" + id + "'");
    g.ids.push_back(id);
    if (!v.contains("weight") || v.at("weight").is_null()) {
      g.weights.push_back(std::nullopt);
    } else if (v.at("weight").is_number_integer()) {
      g.weights.push_back(v.at("weight").get<int64_t>());
    } else {
      throw InputError("weight of '" + id + "' must be an integer or null");
    }
  }
  if (j.contains("edges")) {
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InputError("each edge must be a pair");
      const int a = g.index_of(id_of(e[0]));
      const int b = g.index_of(id_of(e[1]));
      if (a < 0 || b < 0) throw InputError("edge references an unknown vertex");
      add_edge(g, a, b, "");
    }
  }
  validate_graph(g);
  return g;
}

}  // namespace

void validate_graph(const PlumbingGraph& g) {
  std::set<std::string> seen;
  int unweighted = 0;
  for (int i = 0; i < g.size(); ++i) {
    if (!seen.insert(g.ids[i]).second) throw InputError("duplicate vertex '" + g.ids[i] + "'");
    if (!g.weights[i]) ++unweighted;
  }
  if (unweighted > 1) throw InputError("more than one unweighted vertex");
  UnionFind uf(g.size());
  for (auto [a, b] : g.edges) {
    if (a < 0 || b < 0 || a >= g.size() || b >= g.size()) throw InputError("edge references an unknown vertex");
    if (a == b || !uf.unite(a, b))
      throw InputError("cycle detected at edge " + g.ids[a] + " " + g.ids[b]);
  }
}

PlumbingGraph parse_graph(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_json_graph(text);

  PlumbingGraph g;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::vector<std::pair<int, std::pair<Token, Token>>> pending_edges;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = tokenize(line);
    if (tok.empty()) continue;
    if (tok[0].text == "vertex") {
      if (tok.size() != 3) throw InputError(at(lineno, tok[0].col) + "expected 'vertex <id> <weight>|unweighted'");
      const std::string& id = tok[1].text;
      if (g.index_of(id) >= 0) throw InputError(at(lineno, tok[1].col) + "duplicate vertex '" + id + "'");
      g.ids.push_back(id);
      if (tok[2].text == "unweighted") {
        g.weights.push_back(std::nullopt);
      } else {
        int64_t w = 0;
        if (!parse_int(tok[2].text, w))
          throw InputError(at(lineno, tok[2].col) + "weight must be an integer or 'unweighted'");
        g.weights.push_back(w);
      }
    } else if (tok[0].text == "edge") {
      if (tok.size() != 3) throw InputError(at(lineno, tok[0].col) + "expected 'edge <id> <id>'");
      pending_edges.push_back({lineno, {tok[1], tok[2]}});
    } else {
      throw InputError(at(lineno, tok[0].col) + "unknown statement '" + tok[0].text + "'");
    }
  }
  UnionFind uf(g.size());
  for (const auto& [ln, ends] : pending_edges) {
    const int a = g.index_of(ends.first.text);
    const int b = g.index_of(ends.second.text);
    if (a < 0) throw InputError(at(ln, ends.first.col) + "unknown vertex '" + ends.first.text + "'");
    if (b < 0) throw InputError(at(ln, ends.second.col) + "unknown vertex '" + ends.second.text + "'");
    if (a == b || !uf.unite(a, b)) throw InputError(at(ln, ends.first.col) + "cycle detected");
    add_edge(g, a, b, at(ln, ends.first.col));
  }
  validate_graph(g);
  return g;
}

PlumbingGraph read_graph_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open graph file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_graph(ss.str());
}

std::string format_graph(const PlumbingGraph& g) {
  std::ostringstream out;
  for (int i = 0; i < g.size(); ++i) {
    out << "vertex " << g.ids[i] << ' ';
    if (g.weights[i])
      out << *g.weights[i];
    else
      out << "unweighted";
    out << '\n';
  }
  for (auto [a, b] : g.edges) out << "edge " << g.ids[a] << ' ' << g.ids[b] << '\n';
  return out.str();
}

IntMat intersection_matrix(const PlumbingGraph& g) {
  const auto w = g.weighted();
  std::vector<int> pos(g.size(), -1);
  for (size_t i = 0; i < w.size(); ++i) pos[w[i]] = static_cast<int>(i);
  IntMat m(w.size(), IntVec(w.size(), 0));
  for (size_t i = 0; i < w.size(); ++i) m[i][i] = *g.weights[w[i]];
  for (auto [a, b] : g.edges) {
    if (pos[a] < 0 || pos[b] < 0) continue;
    m[pos[a]][pos[b]] = 1;
    m[pos[b]][pos[a]] = 1;
  }
  return m;
}

IntVec v0_incidence(const PlumbingGraph& g) {
  const auto v0 = g.v0();
  if (!v0) throw InputError("graph has no unweighted vertex");
  const auto w = g.weighted();
  IntVec e(w.size(), 0);
  for (auto [a, b] : g.edges) {
    int other = -1;
    if (a == *v0) other = b;
    if (b == *v0) other = a;
    if (other < 0) continue;
    const auto it = std::find(w.begin(), w.end(), other);
    e[it - w.begin()] = 1;
  }
  return e;
}

PlumbingGraph weighted_part(const PlumbingGraph& g) {
  const auto v0 = g.v0();
  if (!v0) return g;
  PlumbingGraph out;
  std::vector<int> pos(g.size(), -1);
  for (int i = 0; i < g.size(); ++i) {
    if (i == *v0) continue;
    pos[i] = out.size();
    out.ids.push_back(g.ids[i]);
    out.weights.push_back(g.weights[i]);
  }
  for (auto [a, b] : g.edges)
    if (pos[a] >= 0 && pos[b] >= 0) out.edges.emplace_back(pos[a], pos[b]);
  return out;
}

PlumbingGraph fill(const PlumbingGraph& g, int64_t n) {
  const auto v0 = g.v0();
  if (!v0) throw InputError("graph has no unweighted vertex to fill");
  PlumbingGraph out = g;
  out.weights[*v0] = n;
  return out;
}

PlumbingGraph attach_unweighted(const PlumbingGraph& g, int at, const std::string& id) {
  if (g.has_v0()) throw InputError("graph already has an unweighted vertex");
  if (g.index_of(id) >= 0) throw InputError("vertex id '" + id + "' already used");
  PlumbingGraph out = g;
  out.ids.push_back(id);
  out.weights.push_back(std::nullopt);
  out.edges.emplace_back(at, out.size() - 1);
  return out;
}

PlumbingGraph star_graph(int64_t center_weight, const std::vector<IntVec>& legs, bool knot_at_center) {
  PlumbingGraph g;
  g.ids.push_back("o");
  g.weights.push_back(center_weight);
  for (size_t l = 0; l < legs.size(); ++l) {
    int prev = 0;
    for (size_t j = 0; j < legs[l].size(); ++j) {
      std::string id = l < 14 ? std::string(1, static_cast<char>('a' + l)) : "l" + std::to_string(l) + "_";
      if (j > 0) id += std::to_string(j + 1);
      g.ids.push_back(id);
      g.weights.push_back(legs[l][j]);
      g.edges.emplace_back(prev, g.size() - 1);
      prev = g.size() - 1;
    }
  }
  if (knot_at_center) {
    g.ids.push_back("v0");
    g.weights.push_back(std::nullopt);
    g.edges.emplace_back(0, g.size() - 1);
  }
  validate_graph(g);
  return g;
}

std::vector<BigInt> leading_minors(const IntMat& m0) {
  const size_t n = m0.size();
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m[i][j] = m0[i][j];
  std::vector<BigInt> minors;
  BigInt prev = 1;
  for (size_t k = 0; k < n; ++k) {
    minors.push_back(m[k][k]);
    if (m[k][k] == 0) {
      // Remaining leading minors are not determined by this elimination; stop.
      break;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return minors;
}

BigInt determinant(const IntMat& m0) {
  const size_t n = m0.size();
  if (n == 0) return 1;
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m[i][j] = m0[i][j];
  BigInt prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

RatMat inverse(const IntMat& m0) {
  const size_t n = m0.size();
  RatMat a(n, RatVec(2 * n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) a[i][j] = m0[i][j];
    a[i][n + i] = 1;
  }
  for (size_t k = 0; k < n; ++k) {
    size_t r = k;
    while (r < n && a[r][k] == 0) ++r;
    if (r == n) throw ComputationError("matrix is singular");
    std::swap(a[k], a[r]);
    const Rational p = a[k][k];
    for (size_t j = 0; j < 2 * n; ++j) a[k][j] /= p;
    for (size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      const Rational f = a[i][k];
      for (size_t j = k; j < 2 * n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  RatMat out(n, RatVec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out[i][j] = a[i][n + j];
  return out;
}

IntersectionForm intersection_form(const PlumbingGraph& g) {
  IntersectionForm f;
  f.matrix = intersection_matrix(g);
  f.det = determinant(f.matrix);
  if (f.det != 0) f.inverse = inverse(f.matrix);
  return f;
}

bool is_negative_definite(const IntMat& m) {
  // -m positive definite iff the k-th leading minor of m has sign (-1)^k.
  const auto minors = leading_minors(m);
  if (minors.size() != m.size()) return false;
  for (size_t k = 0; k < minors.size(); ++k) {
    const int want = (k % 2 == 0) ? -1 : 1;
    if (minors[k] == 0 || (minors[k] > 0 ? 1 : -1) != want) return false;
  }
  return true;
}

bool is_negative_definite(const PlumbingGraph& g) { return is_negative_definite(intersection_matrix(g)); }

std::vector<std::vector<int>> weighted_components(const PlumbingGraph& g) {
  const auto w = g.weighted();
  std::vector<int> pos(g.size(), -1);
  for (size_t i = 0; i < w.size(); ++i) pos[w[i]] = static_cast<int>(i);
  UnionFind uf(static_cast<int>(w.size()));
  for (auto [a, b] : g.edges)
    if (pos[a] >= 0 && pos[b] >= 0) uf.unite(pos[a], pos[b]);
  std::vector<std::vector<int>> comps;
  std::vector<int> comp_of(w.size(), -1);
  for (size_t i = 0; i < w.size(); ++i) {
    const int r = uf.find(static_cast<int>(i));
    if (comp_of[r] < 0) {
      comp_of[r] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[comp_of[r]].push_back(static_cast<int>(i));
  }
  return comps;
}

namespace {

MinimalCycle laufer(const IntMat& q, const std::vector<int>& verts, const BigInt& det) {
  MinimalCycle out;
  out.z.assign(q.size(), 0);
  if (verts.empty()) return out;
  out.z[verts[0]] = 1;
  out.path.push_back(verts[0]);
  const BigInt cap = abs(det) * BigInt(verts.size() * verts.size()) + 1;
  BigInt steps = 0;
  while (true) {
    int add = -1;
    for (int v : verts) {
      int64_t pairing = 0;
      for (int u : verts) pairing += q[v][u] * out.z[u];
      if (pairing > 0) {
        add = v;
        break;
      }
    }
    if (add < 0) break;
    if (++steps > cap) throw ComputationError("Laufer sequence exceeded its step cap");
    ++out.z[add];
    out.path.push_back(add);
  }
  return out;
}

}  // namespace

MinimalCycle minimal_cycle(const PlumbingGraph& g) {
  const auto comps = weighted_components(g);
  if (comps.size() != 1) throw InputError("minimal_cycle needs a connected weighted graph");
  const auto q = intersection_matrix(g);
  if (!is_negative_definite(q)) throw InputError("graph is not negative definite");
  return laufer(q, comps[0], determinant(q));
}

MinimalCycle minimal_cycle_per_component(const PlumbingGraph& g) {
  const auto q = intersection_matrix(g);
  if (!is_negative_definite(q)) throw InputError("graph is not negative definite");
  MinimalCycle out;
  out.z.assign(q.size(), 0);
  for (const auto& comp : weighted_components(g)) {
    IntMat sub(comp.size(), IntVec(comp.size()));
    for (size_t i = 0; i < comp.size(); ++i)
      for (size_t j = 0; j < comp.size(); ++j) sub[i][j] = q[comp[i]][comp[j]];
    const auto part = laufer(q, comp, determinant(sub));
    for (size_t i = 0; i < q.size(); ++i) out.z[i] += part.z[i];
    out.path.insert(out.path.end(), part.path.begin(), part.path.end());
  }
  return out;
}

RatVec sigma0(const PlumbingGraph& g_v0) {
  const auto e = v0_incidence(g_v0);
  const auto q = intersection_matrix(g_v0);
  if (!is_negative_definite(q)) throw InputError("weighted part is not negative definite");
  const auto inv = inverse(q);
  RatVec s(e.size());
  for (size_t i = 0; i < e.size(); ++i)
    for (size_t j = 0; j < e.size(); ++j) s[i] += inv[i][j] * e[j];
  return s;
}

Rational sigma0_square(const PlumbingGraph& g_v0) {
  const auto e = v0_incidence(g_v0);
  const auto s = sigma0(g_v0);
  Rational out = 0;
  for (size_t i = 0; i < e.size(); ++i) out += s[i] * e[i];
  return out;
}

Rational seifert_framing(const PlumbingGraph& g_v0, int64_t n) {
  const Rational s = Rational(n) - sigma0_square(g_v0);
  if (!is_negative_definite(fill(g_v0, n)))
    throw InputError("filled graph is not negative definite (Seifert framing " + to_string(s) + ")");
  return s;
}

Rational cocore_self_pairing(const PlumbingGraph& g_v0, int64_t n) {
  const auto filled = fill(g_v0, n);
  if (!is_negative_definite(filled)) throw InputError("filled graph is not negative definite");
  const int v0 = *g_v0.v0();
  const auto w = filled.weighted();
  const auto pos = std::find(w.begin(), w.end(), v0) - w.begin();
  return inverse(intersection_matrix(filled))[pos][pos];
}

}  // namespace lattice
