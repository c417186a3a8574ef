#include "gkt/knapsack.hpp"

#include "gkt/errors.hpp"

namespace gkt {

namespace {

Word flatten(const FreeProductNormalForm& nf) {
  Word out;
  for (const Syllable& s : nf.syllables)
    out.insert(out.end(), s.element.begin(), s.element.end());
  return out;
}

Word flatten(const std::vector<Syllable>& syllables) {
  Word out;
  for (const Syllable& s : syllables)
    out.insert(out.end(), s.element.begin(), s.element.end());
  return out;
}

}  // namespace

DumbnessReport classify_dumb(const GroupPtr& spec, const Word& f) {
  if (spec->kind != GroupKind::FreeProduct)
    throw UnsupportedSpec("dumbness is defined over free products");
  check_word(*spec, f);

  DumbnessReport rep;
  FreeProductNormalForm nf = free_product_normal_form(spec, f);
  Word w = flatten(nf);
  // Strip conjugating syllables: f = s1 m sk with s1, sk in the same
  // factor becomes s1^-1 f s1 = m (sk s1), one syllable shorter.
  while (nf.syllables.size() >= 2 &&
         nf.syllables.front().side == nf.syllables.back().side) {
    Word s1 = nf.syllables.front().element;
    w = concat(inverse(s1), concat(w, s1));
    rep.conjugator = concat(inverse(s1), rep.conjugator);
    nf = free_product_normal_form(spec, w);
    w = flatten(nf);
  }
  rep.dumb = nf.syllables.size() <= 1;
  rep.core = std::move(w);
  rep.form = std::move(nf);
  return rep;
}

PowerForm power_normal_form(const GroupPtr& spec, const Word& f) {
  DumbnessReport rep = classify_dumb(spec, f);
  if (rep.dumb)
    throw MalformedInput("power_normal_form requires a non-dumb element");
  PowerForm pf;
  pf.a = free_product_normal_form(spec, inverse(rep.conjugator)).syllables;
  pf.b = rep.form.syllables;
  pf.c = free_product_normal_form(
             spec, concat(rep.core, concat(rep.core, rep.conjugator)))
             .syllables;
  return pf;
}

Word power_form_word(const PowerForm& pf, long long n) {
  if (n < 2) throw MalformedInput("power form covers exponents n >= 2");
  Word out = flatten(pf.a);
  Word b = flatten(pf.b);
  for (long long i = 0; i < n - 2; ++i)
    out.insert(out.end(), b.begin(), b.end());
  Word c = flatten(pf.c);
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

long long eval_poly(const std::vector<long long>& coeffs, long long x) {
  long long acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = acc * x + *it;
  return acc;
}

long long p_base(long long x) { return x * x + 4 * x; }

namespace {

std::vector<long long> factor_poly(const GroupSpec& f) {
  switch (f.kind) {
    case GroupKind::Finite:
      return {f.order};
    case GroupKind::Free:
    case GroupKind::Abelian:
      return {0, 0, 1};
    default:
      throw UnsupportedSpec(
          "no default exponent polynomial for this factor kind");
  }
}

}  // namespace

BoundConfig default_bounds(const GroupPtr& spec) {
  if (spec->kind != GroupKind::FreeProduct)
    throw UnsupportedSpec("exponent bounds apply to free products");
  return {factor_poly(*spec->left), factor_poly(*spec->right)};
}

long long instance_size_N(const KPInstance& inst) {
  long long n = (long long)inst.target.size();
  for (const Word& w : inst.elements) n += (long long)w.size();
  return n;
}

long long exponent_bound(const KPInstance& inst, const BoundConfig& cfg) {
  long long n = instance_size_N(inst);
  long long b = p_base(n) + eval_poly(cfg.p_g, n) + eval_poly(cfg.p_h, n);
  return b < 1 ? 1 : b;
}

KpResult kp_solve(const KPInstance& inst) {
  return kp_solve(inst, default_bounds(inst.spec));
}

KpResult kp_solve(const KPInstance& inst, const BoundConfig& cfg) {
  if (inst.spec->kind != GroupKind::FreeProduct)
    throw UnsupportedSpec("kp_solve handles free products");
  check_word(*inst.spec, inst.target);
  for (const Word& w : inst.elements) check_word(*inst.spec, w);
  if (inst.elements.empty()) {
    bool yes = word_problem(inst.spec, inst.target);
    if (!yes) return {false, std::nullopt};
    return {true, ExponentsCert{}};
  }
  BKPInstance bkp{inst.spec, inst.elements, inst.target,
                  exponent_bound(inst, cfg)};
  BkpResult r = bkp_solve(bkp);
  return {r.answer, std::move(r.certificate)};
}

bool kp_bruteforce(const KPInstance& inst, long long bound, long long guard) {
  if (bound < 0) throw MalformedInput("exponent bound must be >= 0");
  long long tuples = 1;
  for (size_t i = 0; i < inst.elements.size(); ++i) {
    if (tuples > guard / (bound + 1) + 1)
      throw ResourceLimit("exponent grid too large");
    tuples *= bound + 1;
  }
  if (tuples > guard) throw ResourceLimit("exponent grid too large");

  Word target_canon = canonical_word(inst.spec, inst.target);
  bool found = false;
  auto rec = [&](auto&& self, size_t i, const Word& cur) -> void {
    if (found) return;
    if (i == inst.elements.size()) {
      found = cur == target_canon;
      return;
    }
    Word acc = cur;
    for (long long e = 0; e <= bound && !found; ++e) {
      self(self, i + 1, acc);
      if (e < bound)
        acc = canonical_word(inst.spec, concat(acc, inst.elements[i]));
    }
  };
  rec(rec, 0, canonical_word(inst.spec, {}));
  return found;
}

}  // namespace gkt
