#pragma once

#include "gkt/reductions.hpp"

namespace gkt {

// Conjugation of f into a factor, when possible. In both cases
// f = conjugator^-1 . core . conjugator holds in the group; the dumb case
// has syllable_length(core) <= 1, the non-dumb case a cyclically reduced
// core with >= 2 syllables (recorded in `form`).
struct DumbnessReport {
  bool dumb = false;
  Word conjugator;
  Word core;
  FreeProductNormalForm form;  // normal form of core
};
DumbnessReport classify_dumb(const GroupPtr& spec, const Word& f);

// Syllable lists with concat(a, b^{n-2}, c) equal to f^n for every n >= 2,
// where |a| + |c| <= 2 ||f|| and |b| <= ||f||.
struct PowerForm {
  std::vector<Syllable> a, b, c;
};
// Requires a non-dumb f (throws MalformedInput otherwise).
PowerForm power_normal_form(const GroupPtr& spec, const Word& f);
Word power_form_word(const PowerForm& pf, long long n);

// Exponent-bound polynomials: the fixed p(x) = x^2 + 4x plus per-factor
// polynomials (coefficients low-to-high).
struct BoundConfig {
  std::vector<long long> p_g;
  std::vector<long long> p_h;
};

long long eval_poly(const std::vector<long long>& coeffs, long long x);
long long p_base(long long x);  // x^2 + 4x

// Defaults per factor: finite of order q -> constant q; free or abelian ->
// x^2. Spec must be a FreeProduct.
BoundConfig default_bounds(const GroupPtr& spec);

// Total word length of the elements and the target.
long long instance_size_N(const KPInstance& inst);

// p(N) + p_G(N) + p_H(N), at least 1.
long long exponent_bound(const KPInstance& inst, const BoundConfig& cfg);

struct KpResult {
  bool answer = false;
  std::optional<ExponentsCert> certificate;
};

// Decision for KP over a FreeProduct of Free/Abelian/Finite factors:
// bound the exponents, then run BKP -> SSP -> AGP with saturation; the
// certificate is decoded from the AGP path.
KpResult kp_solve(const KPInstance& inst);
KpResult kp_solve(const KPInstance& inst, const BoundConfig& cfg);

// Exhaustive search over exponent tuples with every n_i <= bound. Throws
// ResourceLimit when more than `guard` tuples would be visited.
bool kp_bruteforce(const KPInstance& inst, long long bound,
                   long long guard = 10000000);

}  // namespace gkt
