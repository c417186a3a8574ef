#pragma once

#include <array>
#include <optional>
#include <vector>

#include "gkt/graph.hpp"

namespace gkt {

// Witness for a positive AGP answer: positions into the instance's edge
// list forming a contiguous alpha -> omega path whose label equals the
// target in the group.
struct PathCertificate {
  std::vector<int> edge_positions;
};

struct AgpResult {
  bool answer = false;
  std::optional<PathCertificate> certificate;
};

// Free-group AGP via Dyck-reachability saturation. Cyclic graphs allowed;
// multi-letter labels are subdivided internally, certificates refer to the
// input edge list.
AgpResult agp_free(const AGPInstance& inst);

// Abelian AGP by dynamic programming over (vertex, exponent vector), each
// free coordinate confined to [-l, l] where l is the total label length.
// Requires an acyclic graph (throws CycleDetected).
AgpResult agp_abelian(const AGPInstance& inst);

// Finite-group AGP: breadth-first search on (vertex, element). Cyclic
// graphs allowed.
AgpResult finite_group_reachability(const AGPInstance& inst);

// Reduction of AGP(G x N) to AGP(G) for N built from Abelian/Finite/Direct
// pieces: expands the graph over the reachable (vertex, N-element) states.
struct DirectEliminationResult {
  AGPInstance instance;  // over the left (G) factor
  bool trivially_false = false;  // (omega, h-part) was unreachable
  // Per new edge: originating edge of the input instance and its position
  // among that edge's subdivision pieces. Used to lift certificates back.
  std::vector<int> orig_edge;
  std::vector<int> piece;
  std::vector<int> piece_count;

  PathCertificate lift(const PathCertificate& cert) const;
};
DirectEliminationResult eliminate_direct_factor(const AGPInstance& inst);

// c-edges accumulated by the saturation procedure.
struct SaturationState {
  int rounds = 0;
  std::vector<std::array<int, 3>> added_edges;  // (origin, terminus, c)
  // Vertex count of the saturated working graph, for the 2|C| |V|^2 bound.
  int work_vertex_count = 0;
};

struct SaturationResult {
  bool answer = false;
  SaturationState state;
  std::optional<PathCertificate> certificate;
};

// AGP over FreeProduct or Amalgam specs via c-edge saturation with factor
// solvers (agp_free / agp_abelian / finite reachability). A FreeProduct is
// handled as an amalgam over the trivial group, its c-edges being
// eps-edges. Abelian factors require the graph to be acyclic.
SaturationResult agp_amalgam_saturate(const AGPInstance& inst);

// Rational subset membership: does the automaton accept some word equal to
// `word` in the group? `automaton.alpha` is the start state; `omega` is
// ignored in favour of `accepting`. Abelian factors are unsupported.
struct RationalInstance {
  LabeledGraph automaton;
  std::vector<int> accepting;
  GroupPtr spec;  // Free, FreeProduct, or Amalgam of Free/Finite factors
  Word word;
};

struct RationalResult {
  bool answer = false;
  // Path through the automaton from the start state to an accepting state
  // whose label equals the word in the group.
  std::optional<PathCertificate> certificate;
};

RationalResult rational_membership(const RationalInstance& inst);

// Exhaustive path enumeration oracle. Exact on acyclic graphs; on cyclic
// graphs paths are enumerated up to length path_bound. Throws ResourceLimit
// when more than `guard` path extensions would be explored.
bool agp_bruteforce(const AGPInstance& inst, long long path_bound = 0,
                    long long guard = 10000000);

// Dispatch on the spec kind; Direct specs are routed through
// eliminate_direct_factor with certificates lifted back.
AgpResult agp_solve(const AGPInstance& inst);

// Certificate check against the instance: contiguity, endpoints, and label
// equality with the target under the group's word problem.
bool verify_path_certificate(const AGPInstance& inst,
                             const PathCertificate& cert);

}  // namespace gkt
