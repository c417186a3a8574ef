#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gkt {

// A signed generator letter. `gen` indexes the alphabet of the owning
// GroupSpec; `sign` is +1 or -1. For finite-group and C-subgroup letters
// the sign is resolved through the multiplication table during evaluation.
struct Letter {
  int gen = 0;
  int sign = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

// A word over some alphabet; the empty word is the identity.
using Word = std::vector<Letter>;

inline Letter inverse(Letter l) { return {l.gen, -l.sign}; }

Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);

// Free reduction over the raw letters: cancels adjacent l, l^-1 pairs.
// This is the free-group word problem when the alphabet is a free basis.
Word free_reduce(const Word& w);

// Token syntax: "x0", "x3^-1", space separated. Empty string = empty word.
std::string format_word(const Word& w);
Word parse_word(const std::string& text);

}  // namespace gkt
