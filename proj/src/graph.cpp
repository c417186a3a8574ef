#include "gkt/graph.hpp"

#include <algorithm>
#include <queue>

#include "gkt/errors.hpp"

namespace gkt {

void check_graph(const LabeledGraph& g, const GroupSpec* spec) {
  if (g.vertex_count <= 0)
    throw MalformedInput("graph must have at least one vertex");
  auto in_range = [&](int v) { return v >= 0 && v < g.vertex_count; };
  if (!in_range(g.alpha) || !in_range(g.omega))
    throw MalformedInput("marked vertex out of range");
  for (const auto& e : g.edges) {
    if (!in_range(e.origin) || !in_range(e.terminus))
      throw MalformedInput("edge endpoint out of range");
    if (spec) check_word(*spec, e.label);
  }
}

int size(const LabeledGraph& g) {
  int l = 0;
  for (const auto& e : g.edges) l += (int)e.label.size();
  return (int)g.edges.size() + g.vertex_count + l;
}

SubdivideResult subdivide(const LabeledGraph& g) {
  SubdivideResult out;
  out.graph.vertex_count = g.vertex_count;
  out.graph.alpha = g.alpha;
  out.graph.omega = g.omega;
  for (size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (e.label.size() <= 1) {
      out.graph.edges.push_back(e);
      out.origin_edge.push_back((int)i);
      continue;
    }
    int prev = e.origin;
    for (size_t j = 0; j < e.label.size(); ++j) {
      int next = j + 1 == e.label.size() ? e.terminus
                                         : out.graph.vertex_count++;
      out.graph.edges.push_back({prev, next, Word{e.label[j]}});
      out.origin_edge.push_back((int)i);
      prev = next;
    }
  }
  return out;
}

std::optional<std::vector<int>> topological_sort(const LabeledGraph& g) {
  std::vector<int> indeg(g.vertex_count, 0);
  std::vector<std::vector<int>> succ(g.vertex_count);
  for (const auto& e : g.edges) {
    ++indeg[e.terminus];
    succ[e.origin].push_back(e.terminus);
  }
  std::vector<int> order;
  order.reserve(g.vertex_count);
  std::queue<int> ready;
  for (int v = 0; v < g.vertex_count; ++v)
    if (indeg[v] == 0) ready.push(v);
  while (!ready.empty()) {
    int v = ready.front();
    ready.pop();
    order.push_back(v);
    for (int w : succ[v])
      if (--indeg[w] == 0) ready.push(w);
  }
  if ((int)order.size() != g.vertex_count) return std::nullopt;
  return order;
}

std::optional<std::vector<int>> order_edges(const LabeledGraph& g) {
  if (!topological_sort(g)) return std::nullopt;
  // Line graph: edge i precedes edge j when terminus(i) = origin(j).
  int m = (int)g.edges.size();
  std::vector<std::vector<int>> at_origin(g.vertex_count);
  for (int j = 0; j < m; ++j) at_origin[g.edges[j].origin].push_back(j);
  std::vector<int> indeg(m, 0);
  std::vector<std::vector<int>> succ(m);
  for (int i = 0; i < m; ++i)
    for (int j : at_origin[g.edges[i].terminus]) {
      succ[i].push_back(j);
      ++indeg[j];
    }
  std::vector<int> order;
  order.reserve(m);
  std::queue<int> ready;
  for (int i = 0; i < m; ++i)
    if (indeg[i] == 0) ready.push(i);
  while (!ready.empty()) {
    int i = ready.front();
    ready.pop();
    order.push_back(i);
    for (int j : succ[i])
      if (--indeg[j] == 0) ready.push(j);
  }
  if ((int)order.size() != m) return std::nullopt;  // self-loop
  return order;
}

LabeledGraph restrict_subgraph(const LabeledGraph& g,
                               const std::vector<bool>& keep) {
  LabeledGraph out;
  out.vertex_count = g.vertex_count;
  out.alpha = g.alpha;
  out.omega = g.omega;
  for (const auto& e : g.edges) {
    bool ok = true;
    for (const Letter& l : e.label)
      ok = ok && l.gen < (int)keep.size() && keep[l.gen];
    if (ok) out.edges.push_back(e);
  }
  return out;
}

namespace {

// Iterative Tarjan SCC.
struct Tarjan {
  const std::vector<std::vector<int>>& succ;
  std::vector<int> index, lowlink, comp;
  std::vector<bool> on_stack;
  std::vector<int> stack;
  int next_index = 0, comp_count = 0;

  explicit Tarjan(const std::vector<std::vector<int>>& s)
      : succ(s),
        index(s.size(), -1),
        lowlink(s.size(), 0),
        comp(s.size(), -1),
        on_stack(s.size(), false) {}

  void run(int root) {
    std::vector<std::pair<int, size_t>> call{{root, 0}};
    while (!call.empty()) {
      auto& [v, ei] = call.back();
      if (ei == 0) {
        index[v] = lowlink[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      bool descended = false;
      while (ei < succ[v].size()) {
        int w = succ[v][ei++];
        if (index[w] == -1) {
          call.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) lowlink[v] = std::min(lowlink[v], index[w]);
      }
      if (descended) continue;
      if (lowlink[v] == index[v]) {
        while (true) {
          int w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = comp_count;
          if (w == v) break;
        }
        ++comp_count;
      }
      int child = v;
      call.pop_back();
      if (!call.empty()) {
        int parent = call.back().first;
        lowlink[parent] = std::min(lowlink[parent], lowlink[child]);
      }
    }
  }
};

}  // namespace

std::vector<std::vector<int>> check_stratified(const LabeledGraph& g) {
  if (g.vertex_count == 0 && g.edges.empty()) return {};
  check_graph(g);
  std::vector<std::vector<int>> succ(g.vertex_count);
  for (const auto& e : g.edges) succ[e.origin].push_back(e.terminus);
  Tarjan t(succ);
  for (int v = 0; v < g.vertex_count; ++v)
    if (t.index[v] == -1) t.run(v);
  // Tarjan emits components in reverse topological order.
  std::vector<std::vector<int>> strata(t.comp_count);
  for (int v = 0; v < g.vertex_count; ++v)
    strata[t.comp_count - 1 - t.comp[v]].push_back(v);
  return strata;
}

std::vector<bool> reachable_set(const LabeledGraph& g, int from,
                                bool backward) {
  std::vector<std::vector<int>> adj(g.vertex_count);
  for (const auto& e : g.edges) {
    if (backward)
      adj[e.terminus].push_back(e.origin);
    else
      adj[e.origin].push_back(e.terminus);
  }
  std::vector<bool> seen(g.vertex_count, false);
  std::vector<int> todo{from};
  seen[from] = true;
  while (!todo.empty()) {
    int v = todo.back();
    todo.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        todo.push_back(w);
      }
  }
  return seen;
}

}  // namespace gkt
