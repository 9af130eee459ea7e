#pragma once

#include "lattice/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lattice {

// Weighted forest with at most one unweighted vertex v0 (the knot marker).
// Vertex order is the file order; every matrix and vector downstream is
// indexed by the weighted vertices in that order.
struct PlumbingGraph {
  std::vector<std::string> ids;
  std::vector<std::optional<int64_t>> weights;
  std::vector<std::pair<int, int>> edges;  // vertex indices, first < second

  int size() const { return static_cast<int>(ids.size()); }
  std::optional<int> v0() const;
  bool has_v0() const { return v0().has_value(); }
  int index_of(const std::string& id) const;  // -1 if absent
  // Indices of weighted vertices, in order.
  std::vector<int> weighted() const;
  int num_weighted() const { return static_cast<int>(weighted().size()); }
  std::vector<std::vector<int>> adjacency() const;
};

PlumbingGraph parse_graph(const std::string& text);
PlumbingGraph read_graph_file(const std::string& path);
std::string format_graph(const PlumbingGraph& g);
// Throws InputError on cycles, duplicates, dangling edges or several unweighted vertices.
void validate_graph(const PlumbingGraph& g);

// Intersection form of the weighted vertices.
IntMat intersection_matrix(const PlumbingGraph& g);
// Incidence vector of v0 over the weighted vertices.
IntVec v0_incidence(const PlumbingGraph& g);
// The graph with v0 removed.
PlumbingGraph weighted_part(const PlumbingGraph& g);
// G_v0(n): v0 receives weight n and becomes an ordinary vertex.
PlumbingGraph fill(const PlumbingGraph& g, int64_t n);
// Adds a new unweighted vertex adjacent to `at`; g must have no unweighted vertex.
PlumbingGraph attach_unweighted(const PlumbingGraph& g, int at, const std::string& id);
// Star with the given center weight and chains of weights; optional unweighted
// vertex attached to the center.
PlumbingGraph star_graph(int64_t center_weight, const std::vector<IntVec>& legs, bool knot_at_center);

struct IntersectionForm {
  IntMat matrix;
  BigInt det;
  RatMat inverse;  // empty when det == 0
};

BigInt determinant(const IntMat& m);
// Leading principal minors via fraction-free elimination.
std::vector<BigInt> leading_minors(const IntMat& m);
RatMat inverse(const IntMat& m);
IntersectionForm intersection_form(const PlumbingGraph& g);

bool is_negative_definite(const PlumbingGraph& g);
bool is_negative_definite(const IntMat& m);

// Connected components of the weighted part, each a sorted list of weighted positions.
std::vector<std::vector<int>> weighted_components(const PlumbingGraph& g);

struct MinimalCycle {
  IntVec z;               // over weighted vertices
  std::vector<int> path;  // start vertex, then each vertex added, as weighted positions
};

// Laufer computation sequence on a connected negative-definite graph.
MinimalCycle minimal_cycle(const PlumbingGraph& g);
// Sum over components; paths concatenated in component order.
MinimalCycle minimal_cycle_per_component(const PlumbingGraph& g);

RatVec sigma0(const PlumbingGraph& g_v0);
Rational sigma0_square(const PlumbingGraph& g_v0);
Rational seifert_framing(const PlumbingGraph& g_v0, int64_t n);
Rational cocore_self_pairing(const PlumbingGraph& g_v0, int64_t n);

}  // namespace lattice
