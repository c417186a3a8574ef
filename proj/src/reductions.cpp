#include "gkt/reductions.hpp"

#include <algorithm>
#include <random>

#include "gkt/errors.hpp"

namespace gkt {

namespace {

Word power(const Word& w, long long e) {
  Word out;
  for (long long i = 0; i < e; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

bool equal_in(const GroupPtr& spec, const Word& a, const Word& b) {
  return word_problem(spec, concat(a, inverse(b)));
}

}  // namespace

// ---------------------------------------------------------------------------
// SSP -> AGP: chain of {g_i, eps} blocks plus a final inverse-target edge.

SspToAgp ssp_to_agp(const SSPInstance& inst) {
  int k = (int)inst.elements.size();
  LabeledGraph g;
  g.vertex_count = k + 2;
  for (int i = 0; i < k; ++i) {
    g.edges.push_back({i, i + 1, inst.elements[i]});
    g.edges.push_back({i, i + 1, {}});
  }
  g.edges.push_back({k, k + 1, inverse(inst.target)});
  g.alpha = 0;
  g.omega = k + 1;
  return {{std::move(g), inst.spec, {}}, k};
}

SubsetCert SspToAgp::lift(const PathCertificate& cert) const {
  SubsetCert out;
  out.bits.assign(k, 0);
  for (int pos : cert.edge_positions)
    if (pos < 2 * k && pos % 2 == 0) out.bits[pos / 2] = 1;
  return out;
}

// ---------------------------------------------------------------------------
// BKP -> SSP: bound_m consecutive copies of each element.

BkpToSsp bkp_to_ssp(const BKPInstance& inst) {
  if (inst.bound_m < 1) throw MalformedInput("BKP bound must be >= 1");
  BkpToSsp out;
  out.k = (int)inst.elements.size();
  out.bound_m = inst.bound_m;
  out.instance.spec = inst.spec;
  out.instance.target = inst.target;
  for (const Word& w : inst.elements)
    for (long long j = 0; j < inst.bound_m; ++j)
      out.instance.elements.push_back(w);
  return out;
}

ExponentsCert BkpToSsp::lift(const SubsetCert& cert) const {
  if ((long long)cert.bits.size() != k * bound_m)
    throw MalformedInput("subset size does not match the BKP image");
  ExponentsCert out;
  out.exponents.assign(k, 0);
  for (size_t i = 0; i < cert.bits.size(); ++i)
    if (cert.bits[i]) ++out.exponents[i / bound_m];
  return out;
}

// ---------------------------------------------------------------------------
// BSMP -> AGP: bound_m layers of k+1 parallel edges.

BsmpToAgp bsmp_to_agp(const BSMPInstance& inst) {
  if (inst.bound_m < 0) throw MalformedInput("BSMP bound must be >= 0");
  BsmpToAgp out;
  out.k = (int)inst.generators.size();
  out.bound_m = inst.bound_m;
  LabeledGraph g;
  g.vertex_count = (int)inst.bound_m + 2;
  for (long long i = 0; i < inst.bound_m; ++i) {
    for (const Word& w : inst.generators)
      g.edges.push_back({(int)i, (int)i + 1, w});
    g.edges.push_back({(int)i, (int)i + 1, {}});
  }
  g.edges.push_back(
      {(int)inst.bound_m, (int)inst.bound_m + 1, inverse(inst.target)});
  g.alpha = 0;
  g.omega = (int)inst.bound_m + 1;
  out.instance = {std::move(g), inst.spec, {}};
  return out;
}

SequenceCert BsmpToAgp::lift(const PathCertificate& cert) const {
  SequenceCert out;
  for (int pos : cert.edge_positions) {
    if (pos >= bound_m * (k + 1)) continue;  // final inverse-target edge
    int j = pos % (k + 1);
    if (j < k) out.indices.push_back(j + 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// AGP -> SSP over G*F2 or GxF2 with marker words v_j = x^j y x^j.

namespace {

Word marker(int offset, int j) {
  Word out;
  for (int i = 0; i < j; ++i) out.push_back({offset, 1});
  out.push_back({offset + 1, 1});
  for (int i = 0; i < j; ++i) out.push_back({offset, 1});
  return out;
}

}  // namespace

AgpToSsp agp_to_ssp(const AGPInstance& inst, AgpToSspMode mode) {
  check_graph(inst.graph, inst.spec.get());
  check_word(*inst.spec, inst.target);
  if (!topological_sort(inst.graph))
    throw CycleDetected("agp_to_ssp requires an acyclic graph");

  int offset = inst.spec->alphabet_size();
  GroupPtr f2 = GroupSpec::free_group(2);
  GroupPtr combined = mode == AgpToSspMode::Free
                          ? GroupSpec::free_product(inst.spec, f2)
                          : GroupSpec::direct(inst.spec, f2);

  AgpToSsp out;
  out.mode = mode;
  out.instance.spec = combined;

  // Fold the target into the graph, then discard vertices not between alpha
  // and the new omega.
  LabeledGraph g = inst.graph;
  int folded_omega = g.vertex_count++;
  g.edges.push_back({g.omega, folded_omega, inverse(inst.target)});
  g.omega = folded_omega;

  std::vector<bool> fwd = reachable_set(g, g.alpha, false);
  std::vector<bool> bwd = reachable_set(g, g.omega, true);
  if (!bwd[g.alpha]) {
    // No alpha -> omega path at all: canonically negative instance.
    out.instance.target = {{offset, 1}};
    return out;
  }

  std::vector<int> rename(g.vertex_count, -1);
  int n = 0;
  for (int v = 0; v < g.vertex_count; ++v)
    if (fwd[v] && bwd[v]) rename[v] = n++;
  LabeledGraph pruned;
  pruned.vertex_count = n;
  pruned.alpha = rename[g.alpha];
  pruned.omega = rename[g.omega];
  std::vector<int> pruned_orig;  // input edge position, -1 for the fold
  for (size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (rename[e.origin] < 0 || rename[e.terminus] < 0) continue;
    pruned.edges.push_back({rename[e.origin], rename[e.terminus], e.label});
    pruned_orig.push_back(i < inst.graph.edges.size() ? (int)i : -1);
  }

  auto topo = topological_sort(pruned);
  auto eorder = order_edges(pruned);
  if (!topo || !eorder) throw CycleDetected("agp_to_ssp requires acyclicity");
  // After pruning, alpha is the unique source and omega the unique sink, so
  // they take positions 1 and n.
  std::vector<int> position(n);
  for (int i = 0; i < n; ++i) position[(*topo)[i]] = i + 1;

  for (int ei : *eorder) {
    const auto& e = pruned.edges[ei];
    Word w = marker(offset, position[e.origin]);
    w = concat(w, e.label);
    w = concat(w, inverse(marker(offset, position[e.terminus])));
    out.instance.elements.push_back(std::move(w));
    out.element_edge.push_back(pruned_orig[ei]);
  }
  out.instance.target =
      concat(marker(offset, 1), inverse(marker(offset, n)));
  return out;
}

PathCertificate AgpToSsp::lift(const SubsetCert& cert) const {
  if (cert.bits.size() != element_edge.size())
    throw MalformedInput("subset size does not match the AGP image");
  PathCertificate out;
  for (size_t i = 0; i < cert.bits.size(); ++i)
    if (cert.bits[i] && element_edge[i] >= 0)
      out.edge_positions.push_back(element_edge[i]);
  return out;
}

// ---------------------------------------------------------------------------
// BSMP -> SSP family over Direct(G, Z).

BsmpToSspZ bsmp_to_ssp_direct_z(const BSMPInstance& inst) {
  if (inst.bound_m < 0) throw MalformedInput("BSMP bound must be >= 0");
  BsmpToSspZ out;
  out.k = (int)inst.generators.size();
  GroupPtr spec_z =
      GroupSpec::direct(inst.spec, GroupSpec::abelian({0}));
  int z = inst.spec->alphabet_size();
  for (long long m = 0; m <= inst.bound_m; ++m) {
    SSPInstance member;
    member.spec = spec_z;
    for (long long b = 0; b < m; ++b)
      for (const Word& w : inst.generators)
        member.elements.push_back(concat(w, {{z, 1}}));
    member.target = inst.target;
    for (long long i = 0; i < m; ++i) member.target.push_back({z, 1});
    out.instances.push_back(std::move(member));
  }
  return out;
}

SequenceCert BsmpToSspZ::lift(int m, const SubsetCert& cert) const {
  if ((long long)cert.bits.size() != (long long)m * k)
    throw MalformedInput("subset size does not match the family member");
  SequenceCert out;
  for (size_t i = 0; i < cert.bits.size(); ++i)
    if (cert.bits[i]) out.indices.push_back((int)(i % k) + 1);
  return out;
}

// ---------------------------------------------------------------------------
// Homomorphisms.

Word apply_morphism(const Morphism& phi, const Word& w) {
  Word out;
  for (const Letter& l : w) {
    if (l.gen < 0 || l.gen >= (int)phi.images.size())
      throw MalformedInput("letter outside the morphism's domain alphabet");
    Word img = l.sign > 0 ? phi.images[l.gen] : inverse(phi.images[l.gen]);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

namespace {

constexpr int kRelationBudget = 10000;

Morphism slice(const Morphism& phi, const GroupPtr& factor, int offset) {
  Morphism sub;
  sub.from = factor;
  sub.to = phi.to;
  sub.images.assign(phi.images.begin() + offset,
                    phi.images.begin() + offset + factor->alphabet_size());
  return sub;
}

void check_relations(const Morphism& phi);

void check_finite_relations(const Morphism& phi) {
  const GroupSpec& f = *phi.from;
  auto img = [&](int e) { return phi.images[e]; };
  if (!word_problem(phi.to, img(f.identity)))
    throw InvalidMap("image of the identity element is nontrivial");
  long long total = (long long)f.order * f.order;
  auto check_pair = [&](int a, int b) {
    if (!equal_in(phi.to, concat(img(a), img(b)), img(f.mul(a, b))))
      throw InvalidMap("finite multiplication not preserved");
  };
  if (total <= kRelationBudget) {
    for (int a = 0; a < f.order; ++a)
      for (int b = 0; b < f.order; ++b) check_pair(a, b);
  } else {
    std::mt19937_64 rng(1);
    for (int i = 0; i < kRelationBudget; ++i)
      check_pair((int)(rng() % f.order), (int)(rng() % f.order));
  }
}

void check_abelian_relations(const Morphism& phi) {
  const GroupSpec& f = *phi.from;
  int k = (int)f.moduli.size();
  int budget = kRelationBudget;
  for (int i = 0; i < k && budget > 0; ++i) {
    for (int j = i + 1; j < k && budget > 0; ++j, --budget) {
      Word comm = concat(concat(phi.images[i], phi.images[j]),
                         concat(inverse(phi.images[i]), inverse(phi.images[j])));
      if (!word_problem(phi.to, comm))
        throw InvalidMap("abelian commutation not preserved");
    }
    if (f.moduli[i] > 0 &&
        !word_problem(phi.to, power(phi.images[i], f.moduli[i])))
      throw InvalidMap("abelian coordinate order not preserved");
  }
}

void check_cross_commutation(const Morphism& phi, int n_left) {
  int total = (int)phi.images.size();
  int budget = kRelationBudget;
  for (int i = 0; i < n_left && budget > 0; ++i)
    for (int j = n_left; j < total && budget > 0; ++j, --budget) {
      Word comm = concat(concat(phi.images[i], phi.images[j]),
                         concat(inverse(phi.images[i]), inverse(phi.images[j])));
      if (!word_problem(phi.to, comm))
        throw InvalidMap("direct-factor commutation not preserved");
    }
}

void check_relations(const Morphism& phi) {
  const GroupSpec& f = *phi.from;
  switch (f.kind) {
    case GroupKind::Free:
      return;
    case GroupKind::Finite:
      return check_finite_relations(phi);
    case GroupKind::Abelian:
      return check_abelian_relations(phi);
    case GroupKind::Direct: {
      int n_left = f.left->alphabet_size();
      check_relations(slice(phi, f.left, 0));
      check_relations(slice(phi, f.right, n_left));
      return check_cross_commutation(phi, n_left);
    }
    case GroupKind::FreeProduct:
      check_relations(slice(phi, f.left, 0));
      return check_relations(slice(phi, f.right, f.left->alphabet_size()));
    case GroupKind::Amalgam: {
      int n_left = f.left->alphabet_size();
      int n_right = f.right->alphabet_size();
      check_relations(slice(phi, f.left, 0));
      check_relations(slice(phi, f.right, n_left));
      for (int c = 0; c < f.c_order; ++c) {
        Word via_left =
            apply_morphism(phi, embed_letters(f, f.embed_left[c], 0));
        Word via_right =
            apply_morphism(phi, embed_letters(f, f.embed_right[c], 1));
        if (!equal_in(phi.to, via_left, via_right))
          throw InvalidMap("amalgamated identifications not preserved");
        if (!equal_in(phi.to, phi.images[n_left + n_right + c], via_left))
          throw InvalidMap("C-letter image inconsistent with its embedding");
      }
      return;
    }
  }
  throw UnsupportedSpec("unknown spec kind");
}

}  // namespace

void check_morphism(const Morphism& phi) {
  if ((int)phi.images.size() != phi.from->alphabet_size())
    throw InvalidMap("one image word required per domain letter");
  for (const Word& w : phi.images) check_word(*phi.to, w);
  check_relations(phi);
}

SSPInstance embed_instance(const SSPInstance& inst, const Morphism& phi) {
  check_morphism(phi);
  SSPInstance out;
  out.spec = phi.to;
  for (const Word& w : inst.elements)
    out.elements.push_back(apply_morphism(phi, w));
  out.target = apply_morphism(phi, inst.target);
  return out;
}

BKPInstance embed_instance(const BKPInstance& inst, const Morphism& phi) {
  check_morphism(phi);
  BKPInstance out;
  out.spec = phi.to;
  for (const Word& w : inst.elements)
    out.elements.push_back(apply_morphism(phi, w));
  out.target = apply_morphism(phi, inst.target);
  out.bound_m = inst.bound_m;
  return out;
}

BSMPInstance embed_instance(const BSMPInstance& inst, const Morphism& phi) {
  check_morphism(phi);
  BSMPInstance out;
  out.spec = phi.to;
  for (const Word& w : inst.generators)
    out.generators.push_back(apply_morphism(phi, w));
  out.target = apply_morphism(phi, inst.target);
  out.bound_m = inst.bound_m;
  return out;
}

KPInstance embed_instance(const KPInstance& inst, const Morphism& phi) {
  check_morphism(phi);
  KPInstance out;
  out.spec = phi.to;
  for (const Word& w : inst.elements)
    out.elements.push_back(apply_morphism(phi, w));
  out.target = apply_morphism(phi, inst.target);
  return out;
}

AGPInstance embed_instance(const AGPInstance& inst, const Morphism& phi) {
  check_morphism(phi);
  AGPInstance out;
  out.spec = phi.to;
  out.graph = inst.graph;
  for (auto& e : out.graph.edges) e.label = apply_morphism(phi, e.label);
  out.target = apply_morphism(phi, inst.target);
  return out;
}

// ---------------------------------------------------------------------------
// Certificate verification.

bool verify_certificate(const SSPInstance& inst, const Certificate& cert) {
  const auto* subset = std::get_if<SubsetCert>(&cert);
  if (!subset) throw MalformedInput("SSP expects a Subset certificate");
  if (subset->bits.size() != inst.elements.size())
    throw MalformedInput("subset dimension mismatch");
  Word product;
  for (size_t i = 0; i < subset->bits.size(); ++i) {
    if (subset->bits[i] != 0 && subset->bits[i] != 1)
      throw MalformedInput("subset entries must be 0 or 1");
    if (subset->bits[i])
      product = concat(product, inst.elements[i]);
  }
  return equal_in(inst.spec, product, inst.target);
}

namespace {

bool verify_exponents(const GroupPtr& spec, const std::vector<Word>& elements,
                      const Word& target, const ExponentsCert& cert,
                      long long bound) {
  if (cert.exponents.size() != elements.size())
    throw MalformedInput("exponent dimension mismatch");
  long long total = 0;
  for (size_t i = 0; i < elements.size(); ++i) {
    long long e = cert.exponents[i];
    if (e < 0 || (bound >= 0 && e > bound))
      throw MalformedInput("exponent out of range");
    total += e * (long long)elements[i].size();
    if (total > 1000000)
      throw ResourceLimit("certificate product too long to verify");
  }
  Word product;
  for (size_t i = 0; i < elements.size(); ++i)
    product = concat(product, power(elements[i], cert.exponents[i]));
  return equal_in(spec, product, target);
}

}  // namespace

bool verify_certificate(const BKPInstance& inst, const Certificate& cert) {
  const auto* exps = std::get_if<ExponentsCert>(&cert);
  if (!exps) throw MalformedInput("BKP expects an Exponents certificate");
  return verify_exponents(inst.spec, inst.elements, inst.target, *exps,
                          inst.bound_m);
}

bool verify_certificate(const KPInstance& inst, const Certificate& cert) {
  const auto* exps = std::get_if<ExponentsCert>(&cert);
  if (!exps) throw MalformedInput("KP expects an Exponents certificate");
  return verify_exponents(inst.spec, inst.elements, inst.target, *exps, -1);
}

bool verify_certificate(const BSMPInstance& inst, const Certificate& cert) {
  const auto* seq = std::get_if<SequenceCert>(&cert);
  if (!seq) throw MalformedInput("BSMP expects a Sequence certificate");
  if ((long long)seq->indices.size() > inst.bound_m)
    throw MalformedInput("sequence longer than the bound");
  Word product;
  for (int i : seq->indices) {
    if (i < 1 || i > (int)inst.generators.size())
      throw MalformedInput("sequence index out of range");
    product = concat(product, inst.generators[i - 1]);
  }
  return equal_in(inst.spec, product, inst.target);
}

bool verify_certificate(const AGPInstance& inst, const Certificate& cert) {
  const auto* path = std::get_if<PathCertificate>(&cert);
  if (!path) throw MalformedInput("AGP expects a Path certificate");
  return verify_path_certificate(inst, *path);
}

// ---------------------------------------------------------------------------
// Enumeration oracles.

bool ssp_bruteforce(const SSPInstance& inst, long long guard) {
  Word target_canon = canonical_word(inst.spec, inst.target);
  Word label;
  long long count = 0;
  bool found = false;
  auto rec = [&](auto&& self, size_t i) -> void {
    if (found) return;
    if (++count > guard) throw ResourceLimit("subset enumeration too large");
    if (i == inst.elements.size()) {
      found = canonical_word(inst.spec, label) == target_canon;
      return;
    }
    self(self, i + 1);
    if (found) return;
    size_t mark = label.size();
    label.insert(label.end(), inst.elements[i].begin(),
                 inst.elements[i].end());
    self(self, i + 1);
    label.resize(mark);
  };
  rec(rec, 0);
  return found;
}

bool bkp_bruteforce(const BKPInstance& inst, long long guard) {
  if (inst.bound_m < 1) throw MalformedInput("BKP bound must be >= 1");
  Word target_canon = canonical_word(inst.spec, inst.target);
  Word label;
  long long count = 0;
  bool found = false;
  auto rec = [&](auto&& self, size_t i) -> void {
    if (found) return;
    if (++count > guard) throw ResourceLimit("exponent enumeration too large");
    if (i == inst.elements.size()) {
      found = canonical_word(inst.spec, label) == target_canon;
      return;
    }
    size_t mark = label.size();
    for (long long e = 0; e <= inst.bound_m && !found; ++e) {
      self(self, i + 1);
      label.insert(label.end(), inst.elements[i].begin(),
                   inst.elements[i].end());
    }
    label.resize(mark);
  };
  rec(rec, 0);
  return found;
}

bool bsmp_bruteforce(const BSMPInstance& inst, long long guard) {
  Word target_canon = canonical_word(inst.spec, inst.target);
  Word label;
  long long count = 0;
  bool found = false;
  auto rec = [&](auto&& self, long long depth) -> void {
    if (found) return;
    if (++count > guard) throw ResourceLimit("sequence enumeration too large");
    if (canonical_word(inst.spec, label) == target_canon) {
      found = true;
      return;
    }
    if (depth == inst.bound_m) return;
    for (const Word& w : inst.generators) {
      if (found) return;
      size_t mark = label.size();
      label.insert(label.end(), w.begin(), w.end());
      self(self, depth + 1);
      label.resize(mark);
    }
  };
  rec(rec, 0);
  return found;
}

// ---------------------------------------------------------------------------
// Solvers through the reductions.

SspResult ssp_solve(const SSPInstance& inst) {
  SspToAgp red = ssp_to_agp(inst);
  AgpResult r = agp_solve(red.instance);
  if (!r.answer || !r.certificate) return {r.answer, std::nullopt};
  return {true, red.lift(*r.certificate)};
}

BkpResult bkp_solve(const BKPInstance& inst) {
  BkpToSsp red = bkp_to_ssp(inst);
  SspResult r = ssp_solve(red.instance);
  if (!r.answer || !r.certificate) return {r.answer, std::nullopt};
  return {true, red.lift(*r.certificate)};
}

BsmpResult bsmp_solve(const BSMPInstance& inst) {
  BsmpToAgp red = bsmp_to_agp(inst);
  AgpResult r = agp_solve(red.instance);
  if (!r.answer || !r.certificate) return {r.answer, std::nullopt};
  return {true, red.lift(*r.certificate)};
}

}  // namespace gkt
