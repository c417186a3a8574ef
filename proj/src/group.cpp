#include "gkt/group.hpp"

#include <algorithm>
#include <random>

#include "gkt/errors.hpp"

namespace gkt {

namespace {

// (length, lex) order used to pick coset-transversal representatives.
bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

void validate_group_table(const std::vector<int>& table, int order,
                          int identity, const char* what) {
  if (order <= 0 || (size_t)table.size() != (size_t)order * order)
    throw InvalidSpec(std::string(what) + ": table size does not match order");
  if (identity < 0 || identity >= order)
    throw InvalidSpec(std::string(what) + ": identity index out of range");
  auto at = [&](int a, int b) { return table[a * order + b]; };
  for (int a = 0; a < order; ++a) {
    std::vector<bool> row(order, false), col(order, false);
    for (int b = 0; b < order; ++b) {
      int r = at(a, b), c = at(b, a);
      if (r < 0 || r >= order || c < 0 || c >= order)
        throw InvalidSpec(std::string(what) + ": entry out of range");
      row[r] = col[c] = true;
    }
    if (std::find(row.begin(), row.end(), false) != row.end() ||
        std::find(col.begin(), col.end(), false) != col.end())
      throw InvalidSpec(std::string(what) + ": row/column not a permutation");
    if (at(identity, a) != a || at(a, identity) != a)
      throw InvalidSpec(std::string(what) + ": identity law fails");
    bool has_inv = false;
    for (int b = 0; b < order; ++b) has_inv |= at(a, b) == identity;
    if (!has_inv)
      throw InvalidSpec(std::string(what) + ": missing inverse");
  }
  auto assoc = [&](int a, int b, int c) {
    return at(at(a, b), c) == at(a, at(b, c));
  };
  if (order <= 64) {
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b)
        for (int c = 0; c < order; ++c)
          if (!assoc(a, b, c))
            throw InvalidSpec(std::string(what) + ": not associative");
  } else {
    std::mt19937_64 rng(0x9e3779b9u);
    for (int i = 0; i < 1000; ++i) {
      int a = (int)(rng() % order), b = (int)(rng() % order),
          c = (int)(rng() % order);
      if (!assoc(a, b, c))
        throw InvalidSpec(std::string(what) + ": not associative");
    }
  }
}

int letter_side(const GroupSpec& spec, int gen) {
  return gen < spec.left->alphabet_size() ? 0 : 1;
}

// Factor-local copy of a single product letter.
Letter local_letter(const GroupSpec& spec, Letter l, int side) {
  if (side == 1) l.gen -= spec.left->alphabet_size();
  return l;
}

const GroupPtr& factor(const GroupSpec& spec, int side) {
  return side == 0 ? spec.left : spec.right;
}

// Internal syllable with the element kept factor-local.
struct LocalSyllable {
  int side;
  Word element;
};

// Stack fold computing the alternating syllable decomposition of w over a
// FreeProduct spec, elements canonicalized factor-locally.
std::vector<LocalSyllable> fold_free_product(const GroupSpec& spec,
                                             const Word& w) {
  std::vector<LocalSyllable> stack;
  for (const Letter& l : w) {
    int side = letter_side(spec, l.gen);
    Word piece{local_letter(spec, l, side)};
    if (!stack.empty() && stack.back().side == side) {
      piece = concat(std::move(stack.back().element), piece);
      stack.pop_back();
    }
    piece = canonical_word(factor(spec, side), piece);
    // A trivial merge just drops out; the syllable below keeps its side, so
    // the alternation invariant survives and the next letter re-merges.
    if (!piece.empty()) stack.push_back({side, std::move(piece)});
  }
  return stack;
}

struct CosetDecomposition {
  int c_prefix;  // element of C
  Word rep;      // canonical coset representative, empty = trivial
};

// Write a factor element h as phi(c) * rep where rep is the chosen
// representative (shortest, then lexicographically least canonical word)
// of the right coset phi(C) * h.
CosetDecomposition decompose_coset(const GroupSpec& spec, int side,
                                   const Word& h) {
  const std::vector<Word>& embed =
      side == 0 ? spec.embed_left : spec.embed_right;
  const GroupPtr& fac = factor(spec, side);
  int best_c = 0;
  Word best = canonical_word(fac, concat(embed[0], h));
  for (int c = 1; c < spec.c_order; ++c) {
    Word cand = canonical_word(fac, concat(embed[c], h));
    if (word_less(cand, best)) {
      best = std::move(cand);
      best_c = c;
    }
  }
  // h = phi(best_c)^-1 * best.
  return {spec.c_inv(best_c), std::move(best)};
}

}  // namespace

int GroupSpec::alphabet_size() const {
  switch (kind) {
    case GroupKind::Free:
      return rank;
    case GroupKind::Finite:
      return order;
    case GroupKind::Abelian:
      return (int)moduli.size();
    case GroupKind::Direct:
    case GroupKind::FreeProduct:
      return left->alphabet_size() + right->alphabet_size();
    case GroupKind::Amalgam:
      return left->alphabet_size() + right->alphabet_size() + c_order;
  }
  return 0;
}

int GroupSpec::inv(int a) const {
  for (int b = 0; b < order; ++b)
    if (mul(a, b) == identity) return b;
  throw InvalidSpec("finite group element without inverse");
}

int GroupSpec::c_inv(int a) const {
  for (int b = 0; b < c_order; ++b)
    if (c_mul(a, b) == 0) return b;
  throw InvalidSpec("amalgam C element without inverse");
}

GroupPtr GroupSpec::free_group(int rank) {
  if (rank <= 0) throw InvalidSpec("free group rank must be positive");
  auto g = std::make_shared<GroupSpec>();
  g->kind = GroupKind::Free;
  g->rank = rank;
  return g;
}

GroupPtr GroupSpec::finite(std::vector<int> table, int identity) {
  int order = 1;
  while (order * order < (int)table.size()) ++order;
  validate_group_table(table, order, identity, "finite group");
  auto g = std::make_shared<GroupSpec>();
  g->kind = GroupKind::Finite;
  g->order = order;
  g->table = std::move(table);
  g->identity = identity;
  return g;
}

GroupPtr GroupSpec::cyclic(int n) {
  if (n <= 0) throw InvalidSpec("cyclic group order must be positive");
  std::vector<int> table(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) table[i * n + j] = (i + j) % n;
  return finite(std::move(table), 0);
}

GroupPtr GroupSpec::abelian(std::vector<long long> moduli) {
  for (long long m : moduli)
    if (m < 0) throw InvalidSpec("abelian modulus must be non-negative");
  auto g = std::make_shared<GroupSpec>();
  g->kind = GroupKind::Abelian;
  g->moduli = std::move(moduli);
  return g;
}

GroupPtr GroupSpec::direct(GroupPtr l, GroupPtr r) {
  if (!l || !r) throw InvalidSpec("direct product factor missing");
  auto g = std::make_shared<GroupSpec>();
  g->kind = GroupKind::Direct;
  g->left = std::move(l);
  g->right = std::move(r);
  return g;
}

GroupPtr GroupSpec::free_product(GroupPtr l, GroupPtr r) {
  if (!l || !r) throw InvalidSpec("free product factor missing");
  auto g = std::make_shared<GroupSpec>();
  g->kind = GroupKind::FreeProduct;
  g->left = std::move(l);
  g->right = std::move(r);
  return g;
}

GroupPtr GroupSpec::amalgam(GroupPtr l, GroupPtr r, std::vector<int> c_table,
                            std::vector<Word> embed_left,
                            std::vector<Word> embed_right) {
  if (!l || !r) throw InvalidSpec("amalgam factor missing");
  for (const GroupPtr& f : {l, r}) {
    if (f->kind != GroupKind::Finite && f->kind != GroupKind::Free &&
        f->kind != GroupKind::Abelian)
      throw UnsupportedSpec(
          "amalgam factors must be finite, free, or abelian");
  }
  int c_order = 1;
  while (c_order * c_order < (int)c_table.size()) ++c_order;
  validate_group_table(c_table, c_order, 0, "amalgam subgroup C");
  if ((int)embed_left.size() != c_order || (int)embed_right.size() != c_order)
    throw InvalidSpec("amalgam embedding map size must equal |C|");

  auto g = std::make_shared<GroupSpec>();
  g->kind = GroupKind::Amalgam;
  g->left = std::move(l);
  g->right = std::move(r);
  g->c_order = c_order;
  g->c_table = std::move(c_table);
  g->embed_left = std::move(embed_left);
  g->embed_right = std::move(embed_right);

  // Verify both embeddings elementwise: words valid, injective homomorphism.
  for (int side = 0; side < 2; ++side) {
    const auto& embed = side == 0 ? g->embed_left : g->embed_right;
    const GroupPtr& fac = side == 0 ? g->left : g->right;
    for (const Word& w : embed) check_word(*fac, w);
    int checks = 0;
    for (int a = 0; a < c_order && checks < 10000; ++a) {
      if (a != 0 && canonical_word(fac, embed[a]).empty())
        throw InvalidSpec("amalgam embedding is not injective");
      for (int b = 0; b < c_order && checks < 10000; ++b, ++checks) {
        Word lhs = concat(embed[a], embed[b]);
        if (canonical_word(fac, lhs) !=
            canonical_word(fac, embed[g->c_mul(a, b)]))
          throw InvalidSpec(
              "amalgam embedding is not closed under C-multiplication");
      }
    }
  }
  return g;
}

void check_word(const GroupSpec& spec, const Word& w) {
  int n = spec.alphabet_size();
  for (const Letter& l : w) {
    if (l.gen < 0 || l.gen >= n)
      throw MalformedInput("letter index " + std::to_string(l.gen) +
                           " out of range for alphabet of size " +
                           std::to_string(n));
    if (l.sign != 1 && l.sign != -1)
      throw MalformedInput("letter sign must be +1 or -1");
  }
}

std::vector<long long> abelian_exponents(const GroupSpec& spec,
                                         const Word& w) {
  std::vector<long long> e(spec.moduli.size(), 0);
  for (const Letter& l : w) e[l.gen] += l.sign;
  for (size_t i = 0; i < e.size(); ++i) {
    long long m = spec.moduli[i];
    if (m > 0) e[i] = ((e[i] % m) + m) % m;
  }
  return e;
}

Word project(const GroupSpec& spec, const Word& w, int side) {
  Word out;
  for (const Letter& l : w) {
    if (letter_side(spec, l.gen) == side)
      out.push_back(local_letter(spec, l, side));
  }
  return out;
}

Word embed_letters(const GroupSpec& spec, const Word& w, int side) {
  int offset = side == 1 ? spec.left->alphabet_size() : 0;
  Word out = w;
  for (Letter& l : out) l.gen += offset;
  return out;
}

Word canonical_word(const GroupPtr& spec, const Word& w) {
  check_word(*spec, w);
  switch (spec->kind) {
    case GroupKind::Free:
      return free_reduce(w);
    case GroupKind::Finite: {
      int e = spec->identity;
      for (const Letter& l : w)
        e = spec->mul(e, l.sign > 0 ? l.gen : spec->inv(l.gen));
      if (e == spec->identity) return {};
      return {Letter{e, 1}};
    }
    case GroupKind::Abelian: {
      auto exps = abelian_exponents(*spec, w);
      Word out;
      for (size_t i = 0; i < exps.size(); ++i) {
        long long e = exps[i];
        for (long long k = 0; k < std::abs(e); ++k)
          out.push_back({(int)i, e > 0 ? 1 : -1});
      }
      return out;
    }
    case GroupKind::Direct: {
      Word l = canonical_word(spec->left, project(*spec, w, 0));
      Word r = canonical_word(spec->right, project(*spec, w, 1));
      return concat(l, embed_letters(*spec, r, 1));
    }
    case GroupKind::FreeProduct: {
      Word out;
      for (const auto& syl : fold_free_product(*spec, w))
        out = concat(out, embed_letters(*spec, syl.element, syl.side));
      return out;
    }
    case GroupKind::Amalgam: {
      AmalgamNormalForm nf = amalgam_normal_form(spec, w);
      Word out;
      int c_base = spec->left->alphabet_size() + spec->right->alphabet_size();
      if (nf.c_prefix != 0) out.push_back({c_base + nf.c_prefix, 1});
      for (const Syllable& s : nf.reps) out = concat(out, s.element);
      return out;
    }
  }
  return {};
}

bool word_problem(const GroupPtr& spec, const Word& w) {
  return canonical_word(spec, w).empty();
}

FreeProductNormalForm free_product_normal_form(const GroupPtr& spec,
                                               const Word& w) {
  if (spec->kind != GroupKind::FreeProduct)
    throw UnsupportedSpec("free_product_normal_form needs a FreeProduct spec");
  check_word(*spec, w);
  FreeProductNormalForm nf;
  for (const auto& syl : fold_free_product(*spec, w))
    nf.syllables.push_back(
        {syl.side, embed_letters(*spec, syl.element, syl.side)});
  return nf;
}

AmalgamNormalForm amalgam_normal_form(const GroupPtr& spec, const Word& w) {
  if (spec->kind != GroupKind::Amalgam)
    throw UnsupportedSpec("amalgam_normal_form needs an Amalgam spec");
  check_word(*spec, w);
  int c_base = spec->left->alphabet_size() + spec->right->alphabet_size();

  int c = 0;  // identity of C
  std::vector<LocalSyllable> reps;  // front = leftmost representative

  // Fold right to left; the state is always the normal form of the suffix.
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const Letter& l = *it;
    if (l.gen >= c_base) {
      int elem = l.gen - c_base;
      if (l.sign < 0) elem = spec->c_inv(elem);
      c = spec->c_mul(elem, c);
      continue;
    }
    int side = letter_side(*spec, l.gen);
    const auto& embed = side == 0 ? spec->embed_left : spec->embed_right;
    Word h{local_letter(*spec, l, side)};
    h = concat(h, embed[c]);
    if (!reps.empty() && reps.front().side == side) {
      h = concat(h, reps.front().element);
      reps.erase(reps.begin());
    }
    h = canonical_word(factor(*spec, side), h);
    CosetDecomposition d = decompose_coset(*spec, side, h);
    c = d.c_prefix;
    if (!d.rep.empty()) reps.insert(reps.begin(), {side, std::move(d.rep)});
  }

  AmalgamNormalForm nf;
  nf.c_prefix = c;
  for (auto& r : reps)
    nf.reps.push_back({r.side, embed_letters(*spec, r.element, r.side)});
  return nf;
}

int syllable_length(const GroupPtr& spec, const Word& w) {
  if (spec->kind == GroupKind::FreeProduct)
    return (int)free_product_normal_form(spec, w).syllables.size();
  if (spec->kind == GroupKind::Amalgam) {
    AmalgamNormalForm nf = amalgam_normal_form(spec, w);
    if (!nf.reps.empty()) return (int)nf.reps.size();
    return nf.c_prefix != 0 ? 1 : 0;
  }
  throw UnsupportedSpec("syllable_length needs a FreeProduct or Amalgam spec");
}

}  // namespace gkt
