#include "gkt/agp.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "gkt/errors.hpp"

namespace gkt {

namespace {

// ---------------------------------------------------------------------------
// Dense boolean relation over vertex pairs.

class BitMatrix {
 public:
  explicit BitMatrix(int n = 0) : n_(n), w_((n + 63) / 64) {
    bits_.assign((size_t)n_ * w_, 0);
  }
  bool test(int u, int v) const {
    return (bits_[(size_t)u * w_ + v / 64] >> (v % 64)) & 1;
  }
  void set(int u, int v) { bits_[(size_t)u * w_ + v / 64] |= 1ull << (v % 64); }
  const uint64_t* row(int u) const { return bits_.data() + (size_t)u * w_; }
  int words() const { return w_; }
  int size() const { return n_; }

 private:
  int n_ = 0, w_ = 0;
  std::vector<uint64_t> bits_;
};

// Calls fn(v) for every bit of (a & ~b) over `words` 64-bit words.
template <typename Fn>
void for_each_delta_bit(const uint64_t* a, const uint64_t* b, int words,
                        Fn&& fn) {
  for (int i = 0; i < words; ++i) {
    uint64_t d = a[i] & ~b[i];
    while (d) {
      int bit = std::countr_zero(d);
      d &= d - 1;
      fn(i * 64 + bit);
    }
  }
}

// ---------------------------------------------------------------------------
// Dyck-reachability: computes the relation R(u,v) = "some u->v path label
// freely reduces to the empty word", with derivations for path witnesses.
// Handles cyclic graphs. Worklist rules:
//   (v,v); eps-edge u->v; R(u,w) R(w,v) => R(u,v);
//   u -a-> p, R(p,q), q -a^-1-> v => R(u,v).

class DyckReach {
 public:
  struct QEdge {
    int u, v;
    int gen = 0, sign = 1;
    bool eps = false;
  };

  DyckReach(int n, std::vector<QEdge> edges)
      : n_(n), edges_(std::move(edges)), rel_(n), rel_t_(n) {
    letter_in_.resize(n_);
    letter_out_.resize(n_);
    for (int i = 0; i < (int)edges_.size(); ++i) {
      if (edges_[i].eps) continue;
      letter_in_[edges_[i].v].push_back(i);
      letter_out_[edges_[i].u].push_back(i);
    }
  }

  void run() {
    for (int v = 0; v < n_; ++v) add(v, v, {Kind::Refl, 0, 0});
    for (int i = 0; i < (int)edges_.size(); ++i)
      if (edges_[i].eps) add(edges_[i].u, edges_[i].v, {Kind::Edge, i, 0});
    while (!work_.empty()) {
      auto [p, q] = work_.back();
      work_.pop_back();
      for (int e1 : letter_in_[p]) {
        for (int e2 : letter_out_[q]) {
          if (edges_[e1].gen == edges_[e2].gen &&
              edges_[e1].sign == -edges_[e2].sign)
            add(edges_[e1].u, edges_[e2].v, {Kind::Wrap, e1, e2});
        }
      }
      // Transitive deltas in bulk: predecessors of p extend to q, and p
      // extends to successors of q.
      for_each_delta_bit(rel_t_.row(p), rel_t_.row(q), rel_.words(),
                         [&](int w) {
                           if (w < n_) add(w, q, {Kind::Trans, p, 0});
                         });
      for_each_delta_bit(rel_.row(q), rel_.row(p), rel_.words(), [&](int w) {
        if (w < n_) add(p, w, {Kind::Trans, q, 0});
      });
    }
  }

  bool query(int u, int v) const { return rel_.test(u, v); }

  // Edge-id path witnessing R(u,v); empty for u == v.
  std::vector<int> witness(int u, int v) const {
    std::vector<int> out;
    struct Token {
      bool emit;
      int a, b;  // emit: edge id in a; else pair (a,b)
    };
    std::vector<Token> stack{{false, u, v}};
    while (!stack.empty()) {
      Token t = stack.back();
      stack.pop_back();
      if (t.emit) {
        out.push_back(t.a);
        continue;
      }
      const Deriv& d = deriv_.at(key(t.a, t.b));
      switch (d.kind) {
        case Kind::Refl:
          break;
        case Kind::Edge:
          out.push_back(d.a);
          break;
        case Kind::Trans:
          stack.push_back({false, d.a, t.b});
          stack.push_back({false, t.a, d.a});
          break;
        case Kind::Wrap:
          stack.push_back({true, d.b, 0});
          stack.push_back({false, edges_[d.a].v, edges_[d.b].u});
          stack.push_back({true, d.a, 0});
          break;
      }
    }
    return out;
  }

 private:
  enum class Kind { Refl, Edge, Trans, Wrap };
  struct Deriv {
    Kind kind;
    int a, b;
  };

  uint64_t key(int u, int v) const { return (uint64_t)u * n_ + v; }

  void add(int u, int v, Deriv d) {
    if (rel_.test(u, v)) return;
    rel_.set(u, v);
    rel_t_.set(v, u);
    deriv_.emplace(key(u, v), d);
    work_.push_back({u, v});
  }

  int n_;
  std::vector<QEdge> edges_;
  BitMatrix rel_, rel_t_;
  std::vector<std::vector<int>> letter_in_, letter_out_;
  std::unordered_map<uint64_t, Deriv> deriv_;
  std::vector<std::pair<int, int>> work_;
};

// ---------------------------------------------------------------------------
// Working graph: instance graph with the inverse target appended as hanging
// paths, then subdivided to single-letter labels. Certificates over the
// working graph collapse back to the original edge list.

struct WorkGraph {
  LabeledGraph graph;          // single-letter labels
  std::vector<int> orig_edge;  // work edge -> original edge, or -1 (hanging)
  std::vector<int> piece;      // position among the original edge's pieces
  std::vector<int> piece_count;
  std::vector<int> goal;  // per requested endpoint: end of its hanging path
};

// Appends inverse(target) as a hanging path at each vertex of `at` (one
// fresh tail per vertex; for an empty target the goal is the vertex itself).
WorkGraph make_work_graph(const LabeledGraph& g, const Word& target,
                          const std::vector<int>& at) {
  LabeledGraph staged = g;
  std::vector<int> staged_orig(g.edges.size());
  for (size_t i = 0; i < g.edges.size(); ++i) staged_orig[i] = (int)i;
  std::vector<int> goals;
  Word tail = inverse(target);
  for (int v : at) {
    if (tail.empty()) {
      goals.push_back(v);
      continue;
    }
    int end = staged.vertex_count++;
    staged.edges.push_back({v, end, tail});
    staged_orig.push_back(-1);
    goals.push_back(end);
  }

  SubdivideResult sub = subdivide(staged);
  WorkGraph out;
  out.graph = std::move(sub.graph);
  out.goal = std::move(goals);
  std::vector<int> first_piece(staged.edges.size(), -1);
  std::vector<int> counts(staged.edges.size(), 0);
  for (size_t i = 0; i < sub.origin_edge.size(); ++i) ++counts[sub.origin_edge[i]];
  out.orig_edge.resize(sub.origin_edge.size());
  out.piece.resize(sub.origin_edge.size());
  out.piece_count.resize(sub.origin_edge.size());
  std::vector<int> seen(staged.edges.size(), 0);
  for (size_t i = 0; i < sub.origin_edge.size(); ++i) {
    int se = sub.origin_edge[i];
    out.orig_edge[i] = staged_orig[se];
    out.piece[i] = seen[se]++;
    out.piece_count[i] = counts[se];
  }
  return out;
}

// Collapse a contiguous working-graph path into original edge positions,
// dropping the hanging-tail suffix.
PathCertificate collapse_work_path(const WorkGraph& wg,
                                   const std::vector<int>& path) {
  PathCertificate cert;
  size_t i = 0;
  while (i < path.size()) {
    int e = path[i];
    if (wg.orig_edge[e] < 0) break;  // hanging tail: everything after is too
    int orig = wg.orig_edge[e];
    int count = wg.piece_count[e];
    for (int j = 0; j < count; ++j) {
      if (i >= path.size() || wg.orig_edge[path[i]] != orig ||
          wg.piece[path[i]] != j)
        throw Error("internal: broken subdivision run in certificate path");
      ++i;
    }
    cert.edge_positions.push_back(orig);
  }
  return cert;
}

}  // namespace

// ---------------------------------------------------------------------------
// Free-group AGP.

AgpResult agp_free(const AGPInstance& inst) {
  if (inst.spec->kind != GroupKind::Free)
    throw UnsupportedSpec("agp_free needs a Free spec");
  check_graph(inst.graph, inst.spec.get());
  check_word(*inst.spec, inst.target);

  WorkGraph wg = make_work_graph(inst.graph, inst.target, {inst.graph.omega});
  std::vector<DyckReach::QEdge> qedges;
  qedges.reserve(wg.graph.edges.size());
  for (const auto& e : wg.graph.edges) {
    if (e.label.empty())
      qedges.push_back({e.origin, e.terminus, 0, 1, true});
    else
      qedges.push_back(
          {e.origin, e.terminus, e.label[0].gen, e.label[0].sign, false});
  }
  DyckReach dyck(wg.graph.vertex_count, std::move(qedges));
  dyck.run();
  int goal = wg.goal[0];
  if (!dyck.query(wg.graph.alpha, goal)) return {false, std::nullopt};
  return {true, collapse_work_path(wg, dyck.witness(wg.graph.alpha, goal))};
}

// ---------------------------------------------------------------------------
// Abelian AGP: DP over (vertex, exponent vector).

namespace {

struct AbelianCoder {
  std::vector<long long> moduli;
  long long box;  // Z coordinates confined to [-box, box]
  std::vector<unsigned long long> stride;
  unsigned long long states = 1;

  AbelianCoder(const std::vector<long long>& mods, long long l)
      : moduli(mods), box(l) {
    stride.resize(moduli.size());
    for (size_t i = 0; i < moduli.size(); ++i) {
      stride[i] = states;
      unsigned long long radix =
          moduli[i] > 0 ? (unsigned long long)moduli[i]
                        : (unsigned long long)(2 * box + 1);
      if (radix == 0 || states > (unsigned long long)4e18 / radix)
        throw ResourceLimit("abelian DP state space too large");
      states *= radix;
    }
  }

  bool in_range(const std::vector<long long>& e) const {
    for (size_t i = 0; i < e.size(); ++i)
      if (moduli[i] == 0 && (e[i] < -box || e[i] > box)) return false;
    return true;
  }

  unsigned long long encode(const std::vector<long long>& e) const {
    unsigned long long code = 0;
    for (size_t i = 0; i < e.size(); ++i)
      code += stride[i] *
              (unsigned long long)(moduli[i] > 0 ? e[i] : e[i] + box);
    return code;
  }
};

}  // namespace

AgpResult agp_abelian(const AGPInstance& inst) {
  if (inst.spec->kind != GroupKind::Abelian)
    throw UnsupportedSpec("agp_abelian needs an Abelian spec");
  check_graph(inst.graph, inst.spec.get());
  check_word(*inst.spec, inst.target);

  WorkGraph wg = make_work_graph(inst.graph, {}, {inst.graph.omega});
  auto topo = topological_sort(wg.graph);
  if (!topo) throw CycleDetected("agp_abelian requires an acyclic graph");

  long long l = 0;
  for (const auto& e : wg.graph.edges) l += (long long)e.label.size();
  l = std::max(l, 1ll);
  AbelianCoder coder(inst.spec->moduli, l);

  std::vector<long long> target = abelian_exponents(*inst.spec, inst.target);
  if (!coder.in_range(target)) return {false, std::nullopt};

  size_t k = inst.spec->moduli.size();
  struct Parent {
    int vertex;
    unsigned long long code;
    int edge;
  };
  // Reached exponent vectors per vertex, with back-pointers.
  std::vector<std::unordered_map<unsigned long long, Parent>> reached(
      wg.graph.vertex_count);
  std::vector<std::unordered_map<unsigned long long, std::vector<long long>>>
      vecs(wg.graph.vertex_count);

  std::vector<std::vector<int>> out_edges(wg.graph.vertex_count);
  for (int i = 0; i < (int)wg.graph.edges.size(); ++i)
    out_edges[wg.graph.edges[i].origin].push_back(i);

  std::vector<long long> zero(k, 0);
  reached[wg.graph.alpha].emplace(coder.encode(zero), Parent{-1, 0, -1});
  vecs[wg.graph.alpha].emplace(coder.encode(zero), zero);

  for (int v : *topo) {
    for (auto& [code, vec] : vecs[v]) {
      for (int ei : out_edges[v]) {
        const auto& e = wg.graph.edges[ei];
        std::vector<long long> next = vec;
        if (!e.label.empty()) {
          const Letter& lt = e.label[0];
          long long m = inst.spec->moduli[lt.gen];
          next[lt.gen] += lt.sign;
          if (m > 0) next[lt.gen] = ((next[lt.gen] % m) + m) % m;
        }
        if (!coder.in_range(next)) continue;
        unsigned long long ncode = coder.encode(next);
        if (reached[e.terminus].count(ncode)) continue;
        reached[e.terminus].emplace(ncode, Parent{v, code, ei});
        vecs[e.terminus].emplace(ncode, std::move(next));
      }
    }
  }

  unsigned long long tcode = coder.encode(target);
  auto it = reached[wg.graph.omega].find(tcode);
  if (it == reached[wg.graph.omega].end()) return {false, std::nullopt};

  std::vector<int> path;
  int v = wg.graph.omega;
  unsigned long long code = tcode;
  while (true) {
    const Parent& p = reached[v].at(code);
    if (p.edge < 0) break;
    path.push_back(p.edge);
    v = p.vertex;
    code = p.code;
  }
  std::reverse(path.begin(), path.end());
  return {true, collapse_work_path(wg, path)};
}

// ---------------------------------------------------------------------------
// Finite-group AGP.

AgpResult finite_group_reachability(const AGPInstance& inst) {
  if (inst.spec->kind != GroupKind::Finite)
    throw UnsupportedSpec("finite_group_reachability needs a Finite spec");
  check_graph(inst.graph, inst.spec.get());
  check_word(*inst.spec, inst.target);

  WorkGraph wg = make_work_graph(inst.graph, {}, {inst.graph.omega});
  int order = inst.spec->order;
  auto eval = [&](const Word& w) {
    int e = inst.spec->identity;
    for (const Letter& l : w)
      e = inst.spec->mul(e, l.sign > 0 ? l.gen : inst.spec->inv(l.gen));
    return e;
  };
  int target = eval(inst.target);

  std::vector<std::vector<int>> out_edges(wg.graph.vertex_count);
  for (int i = 0; i < (int)wg.graph.edges.size(); ++i)
    out_edges[wg.graph.edges[i].origin].push_back(i);

  auto code = [&](int v, int g) { return v * order + g; };
  std::vector<int> parent_state((size_t)wg.graph.vertex_count * order, -1);
  std::vector<int> parent_edge((size_t)wg.graph.vertex_count * order, -1);
  std::vector<bool> seen((size_t)wg.graph.vertex_count * order, false);

  std::deque<std::pair<int, int>> queue{{wg.graph.alpha, inst.spec->identity}};
  seen[code(wg.graph.alpha, inst.spec->identity)] = true;
  while (!queue.empty()) {
    auto [v, g] = queue.front();
    queue.pop_front();
    for (int ei : out_edges[v]) {
      const auto& e = wg.graph.edges[ei];
      int ng = e.label.empty() ? g : inst.spec->mul(g, eval(e.label));
      int c = code(e.terminus, ng);
      if (seen[c]) continue;
      seen[c] = true;
      parent_state[c] = code(v, g);
      parent_edge[c] = ei;
      queue.push_back({e.terminus, ng});
    }
  }

  int goal = code(wg.graph.omega, target);
  if (!seen[goal]) return {false, std::nullopt};
  std::vector<int> path;
  for (int s = goal; parent_edge[s] >= 0; s = parent_state[s])
    path.push_back(parent_edge[s]);
  std::reverse(path.begin(), path.end());
  return {true, collapse_work_path(wg, path)};
}

// ---------------------------------------------------------------------------
// Direct-factor elimination.

namespace {

bool built_from_finite_abelian(const GroupSpec& s) {
  switch (s.kind) {
    case GroupKind::Finite:
    case GroupKind::Abelian:
      return true;
    case GroupKind::Direct:
      return built_from_finite_abelian(*s.left) &&
             built_from_finite_abelian(*s.right);
    default:
      return false;
  }
}

bool has_infinite_part(const GroupSpec& s) {
  switch (s.kind) {
    case GroupKind::Abelian:
      for (long long m : s.moduli)
        if (m == 0) return true;
      return false;
    case GroupKind::Direct:
      return has_infinite_part(*s.left) || has_infinite_part(*s.right);
    default:
      return false;
  }
}

}  // namespace

PathCertificate DirectEliminationResult::lift(
    const PathCertificate& cert) const {
  PathCertificate out;
  size_t i = 0;
  while (i < cert.edge_positions.size()) {
    int e = cert.edge_positions[i];
    int orig = orig_edge[e];
    int count = piece_count[e];
    for (int j = 0; j < count; ++j) {
      if (i >= cert.edge_positions.size() ||
          orig_edge[cert.edge_positions[i]] != orig ||
          piece[cert.edge_positions[i]] != j)
        throw Error("internal: broken subdivision run in lifted certificate");
      ++i;
    }
    out.edge_positions.push_back(orig);
  }
  return out;
}

DirectEliminationResult eliminate_direct_factor(const AGPInstance& inst) {
  if (inst.spec->kind != GroupKind::Direct)
    throw UnsupportedSpec("eliminate_direct_factor needs a Direct spec");
  const GroupPtr& n = inst.spec->right;
  if (!built_from_finite_abelian(*n))
    throw UnsupportedSpec(
        "eliminated factor must be built from Finite and Abelian pieces");
  check_graph(inst.graph, inst.spec.get());
  check_word(*inst.spec, inst.target);

  SubdivideResult sub = subdivide(inst.graph);
  if (has_infinite_part(*n) && !topological_sort(sub.graph))
    throw CycleDetected(
        "direct-factor elimination over an infinite factor needs an "
        "acyclic graph");

  int n_left = inst.spec->left->alphabet_size();

  DirectEliminationResult out;
  std::vector<int> counts(inst.graph.edges.size(), 0);
  for (int se : sub.origin_edge) ++counts[se];
  std::vector<int> seen_pieces(inst.graph.edges.size(), 0);
  std::vector<int> sub_piece(sub.graph.edges.size());
  for (size_t i = 0; i < sub.graph.edges.size(); ++i)
    sub_piece[i] = seen_pieces[sub.origin_edge[i]]++;

  // BFS over (vertex, canonical word of the accumulated N-part).
  struct State {
    int vertex;
    Word nelem;
  };
  std::vector<State> states;
  std::unordered_map<std::string, int> index;
  auto state_id = [&](int v, Word nelem) {
    std::string key = std::to_string(v) + "|" + format_word(nelem);
    auto [it, inserted] = index.emplace(key, (int)states.size());
    if (inserted) {
      if (states.size() >= 10000000)
        throw ResourceLimit("direct-factor elimination state space too large");
      states.push_back({v, std::move(nelem)});
    }
    return it->second;
  };

  std::vector<std::vector<int>> out_edges(sub.graph.vertex_count);
  for (int i = 0; i < (int)sub.graph.edges.size(); ++i)
    out_edges[sub.graph.edges[i].origin].push_back(i);

  LabeledGraph ng;
  int start = state_id(sub.graph.alpha, {});
  for (int s = start; s < (int)states.size(); ++s) {
    int v = states[s].vertex;
    for (int ei : out_edges[v]) {
      const auto& e = sub.graph.edges[ei];
      Word nelem = states[s].nelem;
      Word label;
      if (!e.label.empty()) {
        const Letter& l = e.label[0];
        if (l.gen < n_left)
          label = {l};
        else
          nelem = canonical_word(n, concat(nelem, {{l.gen - n_left, l.sign}}));
      }
      int t = state_id(e.terminus, std::move(nelem));
      ng.edges.push_back({s, t, std::move(label)});
      out.orig_edge.push_back(sub.origin_edge[ei]);
      out.piece.push_back(sub_piece[ei]);
      out.piece_count.push_back(counts[sub.origin_edge[ei]]);
    }
  }
  ng.vertex_count = (int)states.size();
  ng.alpha = start;

  Word g_hat = project(*inst.spec, inst.target, 0);
  Word h_hat = canonical_word(n, project(*inst.spec, inst.target, 1));
  auto it = index.find(std::to_string(sub.graph.omega) + "|" +
                       format_word(h_hat));
  if (it == index.end()) {
    out.trivially_false = true;
    out.instance = {{2, {}, 0, 1}, inst.spec->left, {}};
    out.orig_edge.clear();
    out.piece.clear();
    out.piece_count.clear();
    return out;
  }
  ng.omega = it->second;
  out.instance = {std::move(ng), inst.spec->left, std::move(g_hat)};
  return out;
}

// ---------------------------------------------------------------------------
// Saturation over free products and amalgams. Maintains, per element c of
// the amalgamated subgroup C, the relation "some existing-edge path from u
// to v spells an element of one factor equal to c". New c-edges feed the
// next round's single-factor queries until nothing changes; a trivial-label
// path from u to v exists iff the identity relation connects them.

namespace {

struct SatRef {
  int base = -1;  // >= 0: a working-graph edge
  int c = 0, u = 0, v = 0;  // otherwise: an accumulated c-edge
};

struct Saturator {
  const GroupPtr& spec;
  const WorkGraph& wg;
  GroupPtr fac[2];
  int n_local[2];
  int c_order;
  std::vector<Word> embed[2];  // factor-local image of each element of C
  int V;

  std::vector<BitMatrix> added;
  std::unordered_map<uint64_t, std::vector<SatRef>> provenance;
  SaturationState state;

  // Working-graph edges split by side; C/empty labels handled via `added`.
  struct SideEdge {
    int id, u, v, gen, sign;  // gen is factor-local
  };
  std::vector<SideEdge> side_edges[2];

  Saturator(const GroupPtr& s, const WorkGraph& w) : spec(s), wg(w) {
    fac[0] = spec->left;
    fac[1] = spec->right;
    n_local[0] = fac[0]->alphabet_size();
    n_local[1] = fac[1]->alphabet_size();
    c_order = spec->kind == GroupKind::Amalgam ? spec->c_order : 1;
    if (spec->kind == GroupKind::Amalgam) {
      embed[0] = spec->embed_left;
      embed[1] = spec->embed_right;
    } else {
      embed[0] = {Word{}};
      embed[1] = {Word{}};
    }
    for (int side = 0; side < 2; ++side)
      if (fac[side]->kind != GroupKind::Free &&
          fac[side]->kind != GroupKind::Finite &&
          fac[side]->kind != GroupKind::Abelian)
        throw UnsupportedSpec(
            "saturation factors must be Free, Finite, or Abelian");

    V = wg.graph.vertex_count;
    added.assign(c_order, BitMatrix(V));
    state.work_vertex_count = V;

    for (int i = 0; i < (int)wg.graph.edges.size(); ++i) {
      const auto& e = wg.graph.edges[i];
      if (e.label.empty()) {
        seed(0, e.origin, e.terminus, i);
        continue;
      }
      const Letter& l = e.label[0];
      if (l.gen < n_local[0])
        side_edges[0].push_back({i, e.origin, e.terminus, l.gen, l.sign});
      else if (l.gen < n_local[0] + n_local[1])
        side_edges[1].push_back(
            {i, e.origin, e.terminus, l.gen - n_local[0], l.sign});
      else {
        int c = l.gen - n_local[0] - n_local[1];
        seed(l.sign > 0 ? c : spec->c_inv(c), e.origin, e.terminus, i);
      }
    }
  }

  uint64_t key(int c, int u, int v) const {
    return ((uint64_t)c * V + u) * V + v;
  }

  void seed(int c, int u, int v, int base_edge) {
    if (added[c].test(u, v)) return;
    added[c].set(u, v);
    provenance[key(c, u, v)] = {SatRef{base_edge}};
  }

  bool commit(int c, int u, int v, std::vector<SatRef> refs) {
    if (c == 0 && u == v) return false;
    if (added[c].test(u, v)) return false;
    added[c].set(u, v);
    provenance[key(c, u, v)] = std::move(refs);
    state.added_edges.push_back({u, v, c});
    return true;
  }

  void run() {
    long long round_cap = 2ll * c_order * V * V + 2;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int side = 0; side < 2; ++side) changed |= run_side(side);
      if (++state.rounds > round_cap)
        throw Error("internal: saturation failed to reach a fixpoint");
    }
  }

  // One single-factor query sweep; returns true if a c-edge was added.
  bool run_side(int side) {
    struct QEdge {
      int u, v;
      int gen = 0, sign = 1;  // factor-local letter, or
      int c = -1;             // an accumulated c-edge
      SatRef ref;
    };
    std::vector<QEdge> q;
    for (const SideEdge& e : side_edges[side])
      q.push_back({e.u, e.v, e.gen, e.sign, -1, SatRef{e.id}});
    for (int c = 0; c < c_order; ++c)
      for (int u = 0; u < V; ++u)
        for (int v = 0; v < V; ++v)
          if (added[c].test(u, v))
            q.push_back({u, v, 0, 1, c, SatRef{-1, c, u, v}});

    switch (fac[side]->kind) {
      case GroupKind::Free:
        return query_free(side, q);
      case GroupKind::Finite:
        return query_finite(side, q);
      default:
        return query_abelian(side, q);
    }
  }

  template <typename Q>
  bool query_free(int side, const std::vector<Q>& q) {
    // C embeds in a free factor only when trivial, so every c-edge is an
    // eps-edge here.
    for (const Q& e : q)
      if (e.c >= 0 && !embed[side][e.c].empty())
        throw UnsupportedSpec("nontrivial C inside a free factor");
    std::vector<DyckReach::QEdge> dq;
    dq.reserve(q.size());
    for (const Q& e : q) dq.push_back({e.u, e.v, e.gen, e.sign, e.c >= 0});
    DyckReach dyck(V, std::move(dq));
    dyck.run();
    bool changed = false;
    for (int u = 0; u < V; ++u)
      for (int v = 0; v < V; ++v) {
        if ((u == v) || !dyck.query(u, v) || added[0].test(u, v)) continue;
        std::vector<SatRef> refs;
        for (int ei : dyck.witness(u, v)) refs.push_back(q[ei].ref);
        changed |= commit(0, u, v, std::move(refs));
      }
    return changed;
  }

  template <typename Q>
  bool query_finite(int side, const std::vector<Q>& q) {
    const GroupSpec& f = *fac[side];
    auto eval = [&](const Word& w) {
      int e = f.identity;
      for (const Letter& l : w) e = f.mul(e, l.sign > 0 ? l.gen : f.inv(l.gen));
      return e;
    };
    std::vector<int> c_elem(c_order);
    std::vector<std::vector<int>> elem_to_c(f.order);
    for (int c = 0; c < c_order; ++c) {
      c_elem[c] = eval(embed[side][c]);
      elem_to_c[c_elem[c]].push_back(c);
    }
    std::vector<std::vector<int>> out_q(V);
    for (int i = 0; i < (int)q.size(); ++i) out_q[q[i].u].push_back(i);

    bool changed = false;
    std::vector<int> parent_state((size_t)V * f.order);
    std::vector<int> parent_edge((size_t)V * f.order);
    std::vector<bool> seen((size_t)V * f.order);
    for (int src = 0; src < V; ++src) {
      std::fill(seen.begin(), seen.end(), false);
      std::deque<int> queue{src * f.order + f.identity};
      seen[queue.front()] = true;
      parent_edge[queue.front()] = -1;
      while (!queue.empty()) {
        int code = queue.front();
        queue.pop_front();
        int v = code / f.order, g = code % f.order;
        for (int ei : out_q[v]) {
          const Q& e = q[ei];
          int h = e.c >= 0 ? c_elem[e.c]
                           : (e.sign > 0 ? e.gen : f.inv(e.gen));
          int nc = e.v * f.order + f.mul(g, h);
          if (seen[nc]) continue;
          seen[nc] = true;
          parent_state[nc] = code;
          parent_edge[nc] = ei;
          queue.push_back(nc);
        }
      }
      for (int v = 0; v < V; ++v)
        for (int g = 0; g < f.order; ++g) {
          int code = v * f.order + g;
          if (!seen[code]) continue;
          for (int c : elem_to_c[g]) {
            if ((c == 0 && v == src) || added[c].test(src, v)) continue;
            std::vector<SatRef> refs;
            for (int s = code; parent_edge[s] >= 0; s = parent_state[s])
              refs.push_back(q[parent_edge[s]].ref);
            std::reverse(refs.begin(), refs.end());
            changed |= commit(c, src, v, std::move(refs));
          }
        }
    }
    return changed;
  }

  template <typename Q>
  bool query_abelian(int side, const std::vector<Q>& q) {
    const GroupSpec& f = *fac[side];
    size_t k = f.moduli.size();
    // The query graph stays acyclic: on a DAG every accumulated c-edge
    // points forward, so a cycle here means the input graph had one.
    {
      LabeledGraph probe;
      probe.vertex_count = V;
      for (const Q& e : q) probe.edges.push_back({e.u, e.v, {}});
      if (!topological_sort(probe))
        throw CycleDetected("abelian saturation factor needs an acyclic graph");
    }
    std::vector<std::vector<long long>> delta(q.size());
    long long l = 1;
    for (size_t i = 0; i < q.size(); ++i) {
      const Q& e = q[i];
      std::vector<long long> d(k, 0);
      if (e.c >= 0)
        d = abelian_exponents(f, embed[side][e.c]);
      else
        d[e.gen] = e.sign;
      for (long long x : d) l += std::abs(x);
      delta[i] = std::move(d);
    }
    AbelianCoder coder(f.moduli, l);
    std::vector<unsigned long long> c_code(c_order);
    for (int c = 0; c < c_order; ++c)
      c_code[c] = coder.encode(abelian_exponents(f, embed[side][c]));

    std::vector<std::vector<int>> out_q(V);
    for (int i = 0; i < (int)q.size(); ++i) out_q[q[i].u].push_back(i);
    LabeledGraph probe;
    probe.vertex_count = V;
    for (const Q& e : q) probe.edges.push_back({e.u, e.v, {}});
    std::vector<int> topo = *topological_sort(probe);

    bool changed = false;
    struct Parent {
      int vertex;
      unsigned long long code;
      int edge;
    };
    for (int src = 0; src < V; ++src) {
      std::vector<std::unordered_map<unsigned long long, Parent>> reached(V);
      std::vector<std::unordered_map<unsigned long long,
                                     std::vector<long long>>> vecs(V);
      std::vector<long long> zero(k, 0);
      reached[src].emplace(coder.encode(zero), Parent{-1, 0, -1});
      vecs[src].emplace(coder.encode(zero), zero);
      for (int v : topo) {
        for (auto& [code, vec] : vecs[v]) {
          for (int ei : out_q[v]) {
            const Q& e = q[ei];
            std::vector<long long> next = vec;
            for (size_t i = 0; i < k; ++i) {
              next[i] += delta[ei][i];
              if (f.moduli[i] > 0)
                next[i] = ((next[i] % f.moduli[i]) + f.moduli[i]) %
                          f.moduli[i];
            }
            if (!coder.in_range(next)) continue;
            unsigned long long ncode = coder.encode(next);
            if (reached[e.v].count(ncode)) continue;
            reached[e.v].emplace(ncode, Parent{v, code, ei});
            vecs[e.v].emplace(ncode, std::move(next));
          }
        }
      }
      for (int v = 0; v < V; ++v)
        for (int c = 0; c < c_order; ++c) {
          if ((c == 0 && v == src) || added[c].test(src, v)) continue;
          auto it = reached[v].find(c_code[c]);
          if (it == reached[v].end()) continue;
          std::vector<SatRef> refs;
          int cv = v;
          unsigned long long code = c_code[c];
          while (true) {
            const Parent& p = reached[cv].at(code);
            if (p.edge < 0) break;
            refs.push_back(q[p.edge].ref);
            cv = p.vertex;
            code = p.code;
          }
          std::reverse(refs.begin(), refs.end());
          changed |= commit(c, src, v, std::move(refs));
        }
    }
    return changed;
  }

  std::vector<int> expand(int c, int u, int v) const {
    std::vector<int> out;
    std::vector<SatRef> stack{{-1, c, u, v}};
    while (!stack.empty()) {
      SatRef r = stack.back();
      stack.pop_back();
      if (r.base >= 0) {
        out.push_back(r.base);
        continue;
      }
      const auto& refs = provenance.at(key(r.c, r.u, r.v));
      stack.insert(stack.end(), refs.rbegin(), refs.rend());
    }
    return out;
  }
};

SaturationResult saturate_core(const LabeledGraph& g, const GroupPtr& spec,
                               const Word& target,
                               const std::vector<int>& hang_at) {
  WorkGraph wg = make_work_graph(g, target, hang_at);
  Saturator sat(spec, wg);
  sat.run();
  SaturationResult out;
  out.state = std::move(sat.state);
  for (int goal : wg.goal) {
    if (goal == wg.graph.alpha) {
      out.answer = true;
      out.certificate = PathCertificate{};
      return out;
    }
    if (sat.added[0].test(wg.graph.alpha, goal)) {
      out.answer = true;
      out.certificate =
          collapse_work_path(wg, sat.expand(0, wg.graph.alpha, goal));
      return out;
    }
  }
  return out;
}

}  // namespace

SaturationResult agp_amalgam_saturate(const AGPInstance& inst) {
  if (inst.spec->kind != GroupKind::FreeProduct &&
      inst.spec->kind != GroupKind::Amalgam)
    throw UnsupportedSpec(
        "agp_amalgam_saturate needs a FreeProduct or Amalgam spec");
  check_graph(inst.graph, inst.spec.get());
  check_word(*inst.spec, inst.target);
  return saturate_core(inst.graph, inst.spec, inst.target,
                       {inst.graph.omega});
}

// ---------------------------------------------------------------------------
// Rational subset membership.

RationalResult rational_membership(const RationalInstance& inst) {
  check_graph(inst.automaton, inst.spec.get());
  check_word(*inst.spec, inst.word);
  if (inst.accepting.empty()) return {false, std::nullopt};
  for (int s : inst.accepting)
    if (s < 0 || s >= inst.automaton.vertex_count)
      throw MalformedInput("accepting state out of range");

  if (inst.spec->kind == GroupKind::Free) {
    WorkGraph wg = make_work_graph(inst.automaton, inst.word, inst.accepting);
    std::vector<DyckReach::QEdge> qedges;
    for (const auto& e : wg.graph.edges) {
      if (e.label.empty())
        qedges.push_back({e.origin, e.terminus, 0, 1, true});
      else
        qedges.push_back(
            {e.origin, e.terminus, e.label[0].gen, e.label[0].sign, false});
    }
    DyckReach dyck(wg.graph.vertex_count, std::move(qedges));
    dyck.run();
    for (int goal : wg.goal) {
      if (goal == wg.graph.alpha)
        return {true, PathCertificate{}};
      if (dyck.query(wg.graph.alpha, goal))
        return {true,
                collapse_work_path(wg, dyck.witness(wg.graph.alpha, goal))};
    }
    return {false, std::nullopt};
  }

  if (inst.spec->kind != GroupKind::FreeProduct &&
      inst.spec->kind != GroupKind::Amalgam)
    throw UnsupportedSpec(
        "rational membership needs a Free, FreeProduct, or Amalgam spec");
  auto reject_abelian = [](const GroupSpec& f) {
    if (f.kind == GroupKind::Abelian)
      throw UnsupportedSpec(
          "rational membership does not support Abelian factors");
  };
  reject_abelian(*inst.spec->left);
  reject_abelian(*inst.spec->right);

  SaturationResult sat =
      saturate_core(inst.automaton, inst.spec, inst.word, inst.accepting);
  return {sat.answer, std::move(sat.certificate)};
}

// ---------------------------------------------------------------------------
// Oracle, dispatch, verification.

bool agp_bruteforce(const AGPInstance& inst, long long path_bound,
                    long long guard) {
  check_graph(inst.graph, inst.spec.get());
  check_word(*inst.spec, inst.target);
  bool acyclic = topological_sort(inst.graph).has_value();

  Word target_canon = canonical_word(inst.spec, inst.target);
  std::vector<std::vector<int>> out_edges(inst.graph.vertex_count);
  for (int i = 0; i < (int)inst.graph.edges.size(); ++i)
    out_edges[inst.graph.edges[i].origin].push_back(i);

  long long count = 0;
  Word label;
  bool found = false;
  auto rec = [&](auto&& self, int v, long long depth) -> void {
    if (found) return;
    if (v == inst.graph.omega &&
        canonical_word(inst.spec, label) == target_canon) {
      found = true;
      return;
    }
    if (!acyclic && depth >= path_bound) return;
    for (int ei : out_edges[v]) {
      if (found) return;
      if (++count > guard)
        throw ResourceLimit("path enumeration budget exhausted");
      const auto& e = inst.graph.edges[ei];
      size_t mark = label.size();
      label.insert(label.end(), e.label.begin(), e.label.end());
      self(self, e.terminus, depth + 1);
      label.resize(mark);
    }
  };
  rec(rec, inst.graph.alpha, 0);
  return found;
}

AgpResult agp_solve(const AGPInstance& inst) {
  switch (inst.spec->kind) {
    case GroupKind::Free:
      return agp_free(inst);
    case GroupKind::Abelian:
      return agp_abelian(inst);
    case GroupKind::Finite:
      return finite_group_reachability(inst);
    case GroupKind::Direct: {
      if (!built_from_finite_abelian(*inst.spec->right) &&
          built_from_finite_abelian(*inst.spec->left)) {
        // only the right factor can be eliminated; swap the factors by
        // relabeling (edge positions, hence certificates, are unchanged)
        int a = inst.spec->left->alphabet_size();
        int b = inst.spec->right->alphabet_size();
        auto relabel = [&](Word w) {
          for (Letter& l : w) l.gen = l.gen < a ? l.gen + b : l.gen - a;
          return w;
        };
        AGPInstance swapped{inst.graph,
                            GroupSpec::direct(inst.spec->right,
                                              inst.spec->left),
                            relabel(inst.target)};
        for (auto& e : swapped.graph.edges) e.label = relabel(e.label);
        return agp_solve(swapped);
      }
      DirectEliminationResult elim = eliminate_direct_factor(inst);
      if (elim.trivially_false) return {false, std::nullopt};
      AgpResult sub = agp_solve(elim.instance);
      if (!sub.answer || !sub.certificate) return sub;
      return {true, elim.lift(*sub.certificate)};
    }
    case GroupKind::FreeProduct:
    case GroupKind::Amalgam: {
      SaturationResult sat = agp_amalgam_saturate(inst);
      return {sat.answer, std::move(sat.certificate)};
    }
  }
  throw UnsupportedSpec("unknown spec kind");
}

bool verify_path_certificate(const AGPInstance& inst,
                             const PathCertificate& cert) {
  check_graph(inst.graph, inst.spec.get());
  check_word(*inst.spec, inst.target);
  int v = inst.graph.alpha;
  Word label;
  for (int pos : cert.edge_positions) {
    if (pos < 0 || pos >= (int)inst.graph.edges.size()) return false;
    const auto& e = inst.graph.edges[pos];
    if (e.origin != v) return false;
    label.insert(label.end(), e.label.begin(), e.label.end());
    v = e.terminus;
  }
  if (v != inst.graph.omega) return false;
  return word_problem(inst.spec, concat(label, inverse(inst.target)));
}

}  // namespace gkt
