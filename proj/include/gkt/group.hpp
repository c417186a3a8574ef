#pragma once

#include <memory>
#include <vector>

#include "gkt/word.hpp"

namespace gkt {

class GroupSpec;
using GroupPtr = std::shared_ptr<const GroupSpec>;

enum class GroupKind { Free, Finite, Abelian, Direct, FreeProduct, Amalgam };

// Recursive description of the ambient group. Immutable after construction;
// the factory functions verify tables and embeddings eagerly and throw
// InvalidSpec on malformed input.
//
// Alphabet layout:
//   Free(r)            -> r letters
//   Finite(order)      -> one letter per element (identity letter acts as 1)
//   Abelian(moduli)    -> one letter per coordinate, modulus 0 = a Z factor
//   Direct, FreeProduct-> left alphabet followed by right alphabet
//   Amalgam            -> left, then right, then one letter per element of C
class GroupSpec {
 public:
  GroupKind kind;

  int rank = 0;  // Free

  int order = 0;  // Finite
  std::vector<int> table;  // Finite: row-major order x order
  int identity = 0;

  std::vector<long long> moduli;  // Abelian

  GroupPtr left, right;  // Direct, FreeProduct, Amalgam

  int c_order = 0;  // Amalgam
  std::vector<int> c_table;  // row-major c_order x c_order, identity = 0
  std::vector<Word> embed_left;   // C -> words over the left factor alphabet
  std::vector<Word> embed_right;  // C -> words over the right factor alphabet

  int alphabet_size() const;

  // Finite / C-subgroup table helpers.
  int mul(int a, int b) const { return table[a * order + b]; }
  int inv(int a) const;
  int c_mul(int a, int b) const { return c_table[a * c_order + b]; }
  int c_inv(int a) const;

  static GroupPtr free_group(int rank);
  static GroupPtr finite(std::vector<int> table, int identity = 0);
  static GroupPtr cyclic(int n);
  static GroupPtr abelian(std::vector<long long> moduli);
  static GroupPtr direct(GroupPtr l, GroupPtr r);
  static GroupPtr free_product(GroupPtr l, GroupPtr r);
  static GroupPtr amalgam(GroupPtr l, GroupPtr r, std::vector<int> c_table,
                          std::vector<Word> embed_left,
                          std::vector<Word> embed_right);
};

// Throws MalformedInput if some letter does not fit the spec's alphabet.
void check_word(const GroupSpec& spec, const Word& w);

// Canonical representative of the element of `spec` spelled by `w`.
// Two words are equal in the group iff their canonical words are identical.
Word canonical_word(const GroupPtr& spec, const Word& w);

// True iff w = 1 in the group.
bool word_problem(const GroupPtr& spec, const Word& w);

// One alternating block of a free-product or amalgam normal form. `side` is
// 0 for the left factor, 1 for the right; `element` is written in the
// product's alphabet (right-factor letters already offset).
struct Syllable {
  int side;
  Word element;

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

struct FreeProductNormalForm {
  std::vector<Syllable> syllables;

  friend bool operator==(const FreeProductNormalForm&,
                         const FreeProductNormalForm&) = default;
};

struct AmalgamNormalForm {
  int c_prefix = 0;  // element index of C
  std::vector<Syllable> reps;  // alternating coset-transversal representatives

  friend bool operator==(const AmalgamNormalForm&,
                         const AmalgamNormalForm&) = default;
};

FreeProductNormalForm free_product_normal_form(const GroupPtr& spec,
                                               const Word& w);
AmalgamNormalForm amalgam_normal_form(const GroupPtr& spec, const Word& w);

// Syllable count of the normal form; spec must be FreeProduct or Amalgam.
int syllable_length(const GroupPtr& spec, const Word& w);

// Projection of a word over Direct(left, right) onto one factor (side 0/1),
// with letters renumbered to the factor's own alphabet.
Word project(const GroupSpec& spec, const Word& w, int side);

// Shift a factor-local word into a product's combined alphabet.
Word embed_letters(const GroupSpec& spec, const Word& w, int side);

// Exponent vector of a word over an Abelian spec, finite coordinates
// reduced into [0, m).
std::vector<long long> abelian_exponents(const GroupSpec& spec, const Word& w);

}  // namespace gkt
