#pragma once

#include <optional>
#include <vector>

#include "gkt/group.hpp"
#include "gkt/word.hpp"

namespace gkt {

// Directed graph with word labels and two marked vertices. Parallel edges
// and empty labels are permitted; certificates reference positions in
// `edges`, so the edge list order is part of the data.
struct LabeledGraph {
  struct Edge {
    int origin = 0;
    int terminus = 0;
    Word label;
  };

  int vertex_count = 0;
  std::vector<Edge> edges;
  int alpha = 0;
  int omega = 0;
};

struct AGPInstance {
  LabeledGraph graph;
  GroupPtr spec;
  Word target;  // default: the empty word
};

// Throws MalformedInput on out-of-range vertex indices (and, when a spec is
// given, labels outside its alphabet).
void check_graph(const LabeledGraph& g, const GroupSpec* spec = nullptr);

// Instance size m + n + l: edges + vertices + total label length.
int size(const LabeledGraph& g);

struct SubdivideResult {
  LabeledGraph graph;
  // For each edge of the result, the index of the original edge it came
  // from; pieces of one original edge are consecutive in path order.
  std::vector<int> origin_edge;
};

// Split every multi-letter label through fresh vertices so that each edge
// carries at most one letter. Path label language is preserved and
// size(result) <= 3 * size(g).
SubdivideResult subdivide(const LabeledGraph& g);

// Kahn topological order of the vertices, or nullopt if the graph is cyclic.
std::optional<std::vector<int>> topological_sort(const LabeledGraph& g);

// Edge ordering such that whenever some path uses edge i before edge j, i
// precedes j; computed by topologically sorting the line graph. Requires g
// acyclic (nullopt otherwise).
std::optional<std::vector<int>> order_edges(const LabeledGraph& g);

// Keep exactly the edges whose label letters all have keep[gen] set;
// empty-label edges always survive. Vertex set unchanged.
LabeledGraph restrict_subgraph(const LabeledGraph& g,
                               const std::vector<bool>& keep);

// Strongly connected components in topological order of the condensation.
// Every finite digraph stratifies, so this never fails on checked input.
std::vector<std::vector<int>> check_stratified(const LabeledGraph& g);

// Reachability from `from` following edges forward (or backward).
std::vector<bool> reachable_set(const LabeledGraph& g, int from,
                                bool backward = false);

}  // namespace gkt
