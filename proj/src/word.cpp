#include "gkt/word.hpp"

#include <charconv>
#include <sstream>

#include "gkt/errors.hpp"

namespace gkt {

Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse(*it));
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

std::string format_word(const Word& w) {
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += 'x';
    out += std::to_string(w[i].gen);
    if (w[i].sign < 0) out += "^-1";
  }
  return out;
}

Word parse_word(const std::string& text) {
  Word out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok.size() < 2 || tok[0] != 'x')
      throw MalformedInput("bad word token: " + tok);
    size_t caret = tok.find('^');
    std::string digits = tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
    int gen = -1;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), gen);
    if (ec != std::errc() || p != digits.data() + digits.size() || gen < 0)
      throw MalformedInput("bad generator index in token: " + tok);
    int sign = 1;
    if (caret != std::string::npos) {
      std::string exp = tok.substr(caret + 1);
      if (exp == "-1")
        sign = -1;
      else if (exp != "1")
        throw MalformedInput("bad exponent in token: " + tok);
    }
    out.push_back({gen, sign});
  }
  return out;
}

}  // namespace gkt
