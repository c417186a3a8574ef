#include <doctest.h>

#include "gkt/errors.hpp"
#include "gkt/word.hpp"

using namespace gkt;

TEST_CASE("token parsing and formatting") {
  CHECK(parse_word("") == Word{});
  CHECK(parse_word("x0") == Word{{0, 1}});
  CHECK(parse_word("x0 x3^-1") == Word{{0, 1}, {3, -1}});
  CHECK(parse_word("  x1   x2 ") == Word{{1, 1}, {2, 1}});
  CHECK(format_word({}) == "");
  CHECK(format_word({{0, 1}, {3, -1}}) == "x0 x3^-1");
  CHECK(parse_word(format_word({{5, -1}, {0, 1}})) == Word{{5, -1}, {0, 1}});

  CHECK_THROWS_AS(parse_word("y0"), MalformedInput);
  CHECK_THROWS_AS(parse_word("x"), MalformedInput);
  CHECK_THROWS_AS(parse_word("x0^2"), MalformedInput);
  CHECK_THROWS_AS(parse_word("x-1"), MalformedInput);
}

TEST_CASE("inverse and concat") {
  Word w = parse_word("x0 x1^-1 x2");
  CHECK(inverse(w) == parse_word("x2^-1 x1 x0^-1"));
  CHECK(inverse(inverse(w)) == w);
  CHECK(concat(w, Word{}) == w);
  CHECK(concat(parse_word("x0"), parse_word("x1")) == parse_word("x0 x1"));
}

TEST_CASE("free reduction basics") {
  CHECK(free_reduce(parse_word("x0 x0^-1")).empty());
  CHECK(free_reduce(parse_word("x0 x1 x1^-1 x0")) == parse_word("x0 x0"));
  CHECK(free_reduce(parse_word("x0 x1 x1^-1 x0^-1")).empty());
  CHECK(free_reduce(parse_word("x0 x1")) == parse_word("x0 x1"));
  // cancellation cascades through the middle
  CHECK(free_reduce(parse_word("x0 x1 x2 x2^-1 x1^-1 x0")) ==
        parse_word("x0 x0"));
}

TEST_CASE("free_reduce is idempotent for all words up to length 12 over two "
          "generators") {
  const Letter letters[4] = {{0, 1}, {0, -1}, {1, 1}, {1, -1}};
  long long failures = 0;
  Word w, digits;
  for (int len = 0; len <= 12; ++len) {
    std::vector<int> idx(len, 0);
    while (true) {
      w.clear();
      for (int i = 0; i < len; ++i) w.push_back(letters[idx[i]]);
      Word r = free_reduce(w);
      if (free_reduce(r) != r) ++failures;
      int pos = len - 1;
      while (pos >= 0 && idx[pos] == 3) idx[pos--] = 0;
      if (pos < 0) break;
      ++idx[pos];
    }
  }
  CHECK(failures == 0);
}
