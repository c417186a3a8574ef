#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "gkt/agp.hpp"
#include "gkt/graph.hpp"

namespace gkt {

// g = g_1^{e_1} ... g_k^{e_k}, e_i in {0,1}.
struct SSPInstance {
  GroupPtr spec;
  std::vector<Word> elements;
  Word target;
};

// Same with 0 <= e_i <= bound_m; the bound is unary (counts toward size).
struct BKPInstance {
  GroupPtr spec;
  std::vector<Word> elements;
  Word target;
  long long bound_m = 1;
};

// g = g_{i_1} ... g_{i_s}, any indices with repetition, 0 <= s <= bound_m.
struct BSMPInstance {
  GroupPtr spec;
  std::vector<Word> generators;
  Word target;
  long long bound_m = 0;
};

// Unbounded non-negative exponents.
struct KPInstance {
  GroupPtr spec;
  std::vector<Word> elements;
  Word target;
};

struct SubsetCert {
  std::vector<int> bits;  // one 0/1 entry per element
};
struct SequenceCert {
  std::vector<int> indices;  // 1-based indices i_1, ..., i_s
};
struct ExponentsCert {
  std::vector<long long> exponents;
};

using Certificate =
    std::variant<PathCertificate, SubsetCert, SequenceCert, ExponentsCert>;

// Chain graph with parallel {g_i, eps} edges per block (positions 2i, 2i+1)
// and a final inverse-target edge; answer-preserving over the same spec.
struct SspToAgp {
  AGPInstance instance;
  int k = 0;

  SubsetCert lift(const PathCertificate& cert) const;
};
SspToAgp ssp_to_agp(const SSPInstance& inst);

// Each element replaced by bound_m consecutive copies.
struct BkpToSsp {
  SSPInstance instance;
  int k = 0;
  long long bound_m = 1;

  ExponentsCert lift(const SubsetCert& cert) const;
};
BkpToSsp bkp_to_ssp(const BKPInstance& inst);

// bound_m layers of k+1 parallel edges (all generators plus eps), then a
// final inverse-target edge.
struct BsmpToAgp {
  AGPInstance instance;
  int k = 0;
  long long bound_m = 0;

  SequenceCert lift(const PathCertificate& cert) const;
};
BsmpToAgp bsmp_to_agp(const BSMPInstance& inst);

enum class AgpToSspMode { Free, Direct };

// Acyclic AGP to SSP over G*F2 (Free mode) or GxF2 (Direct mode), using
// marker words v_j = x^j y x^j at topological vertex positions. The target
// edge is folded into the graph first and unnecessary vertices discarded.
struct AgpToSsp {
  SSPInstance instance;
  AgpToSspMode mode = AgpToSspMode::Free;
  // Per SSP element: the position of its edge in the input instance's edge
  // list, or -1 for the appended inverse-target edge.
  std::vector<int> element_edge;

  PathCertificate lift(const SubsetCert& cert) const;
};
AgpToSsp agp_to_ssp(const AGPInstance& inst, AgpToSspMode mode);

// Cook-style family over Direct(G, Z): member m has m blocks of
// (w_1 z), ..., (w_k z) and target (w, m); the BSMP instance is positive iff
// some member is positive.
struct BsmpToSspZ {
  std::vector<SSPInstance> instances;  // member m at position m
  int k = 0;

  SequenceCert lift(int m, const SubsetCert& cert) const;
};
BsmpToSspZ bsmp_to_ssp_direct_z(const BSMPInstance& inst);

// Letterwise substitution along a homomorphism given by generator images.
struct Morphism {
  GroupPtr from, to;
  std::vector<Word> images;  // one word over `to` per letter of `from`
};

// Verifies the defining relations of `from` on the images (at most 10^4
// checks per relation family); throws InvalidMap on failure.
void check_morphism(const Morphism& phi);
Word apply_morphism(const Morphism& phi, const Word& w);

SSPInstance embed_instance(const SSPInstance& inst, const Morphism& phi);
BKPInstance embed_instance(const BKPInstance& inst, const Morphism& phi);
BSMPInstance embed_instance(const BSMPInstance& inst, const Morphism& phi);
KPInstance embed_instance(const KPInstance& inst, const Morphism& phi);
AGPInstance embed_instance(const AGPInstance& inst, const Morphism& phi);

// Defining-equation checks; wrong certificate variant or mismatched
// dimensions throw MalformedInput.
bool verify_certificate(const SSPInstance& inst, const Certificate& cert);
bool verify_certificate(const BKPInstance& inst, const Certificate& cert);
bool verify_certificate(const BSMPInstance& inst, const Certificate& cert);
bool verify_certificate(const KPInstance& inst, const Certificate& cert);
bool verify_certificate(const AGPInstance& inst, const Certificate& cert);

// Independent enumeration oracles; throw ResourceLimit past `guard` steps.
bool ssp_bruteforce(const SSPInstance& inst, long long guard = 10000000);
bool bkp_bruteforce(const BKPInstance& inst, long long guard = 10000000);
bool bsmp_bruteforce(const BSMPInstance& inst, long long guard = 10000000);

struct SspResult {
  bool answer = false;
  std::optional<SubsetCert> certificate;
};
SspResult ssp_solve(const SSPInstance& inst);

struct BkpResult {
  bool answer = false;
  std::optional<ExponentsCert> certificate;
};
BkpResult bkp_solve(const BKPInstance& inst);

struct BsmpResult {
  bool answer = false;
  std::optional<SequenceCert> certificate;
};
BsmpResult bsmp_solve(const BSMPInstance& inst);

}  // namespace gkt
