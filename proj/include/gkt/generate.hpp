#pragma once

#include <optional>
#include <random>
#include <string>

#include "gkt/json_io.hpp"

namespace gkt {

// Named spec catalog for the CLI and the test corpus.
//   free1, free2, free3           free groups
//   z, z2 (= Z^2)                 free abelian
//   zmod2 ... zmod6               cyclic groups
//   zstarz                        Z * Z            (free factors)
//   zstarzmod2                    Z * Z/2
//   f2starzmod2                   F2 * Z/2
//   zmod2starzmod3                Z/2 * Z/3
//   zmod4starzmod6                Z/4 * Z/6
//   f2xz                          F2 x Z
//   amalgam_z4z6                  Z/4 *_{Z/2} Z/6  (a^2 = b^3)
GroupPtr named_spec(const std::string& name);

Word random_word(std::mt19937_64& rng, const GroupSpec& spec, int max_len);

// Acyclic graph on `vertices` vertices in topological order, alpha = 0,
// omega = vertices - 1, `edges` forward edges with labels of length up to
// max_label_len (empty labels included).
LabeledGraph random_dag(std::mt19937_64& rng, const GroupSpec& spec,
                        int vertices, int edges, int max_label_len);

// Arbitrary digraph (cycles and self-loops allowed).
LabeledGraph random_digraph(std::mt19937_64& rng, const GroupSpec& spec,
                            int vertices, int edges, int max_label_len);

struct GenOptions {
  unsigned long long seed = 0;
  int k = 3;            // elements / generators
  int n = 5;            // vertices / automaton states
  int m = 6;            // edges
  int len = 3;          // max word / label length
  long long bound = 2;  // bound_m for bkp / bsmp
  bool planted = false;
};

struct Generated {
  ProblemFile file;
  std::optional<Certificate> certificate;  // present when planted
};

// Deterministic for a fixed (problem, spec name, options) triple.
Generated generate(const std::string& problem, const std::string& spec_name,
                   const GenOptions& opt);

}  // namespace gkt
