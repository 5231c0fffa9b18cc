#include "herald/preprocess/notation.hpp"

#include <array>
#include <utility>

namespace herald::preprocess {

namespace {

bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

constexpr std::array<std::pair<std::string_view, std::string_view>, 3> kWordRules{{
    {"tg", "tan"},
    {"ctg", "cot"},
    {"arctg", "arctan"},
}};

// A comma between digits is a decimal separator only when the surrounding
// run of digits and commas contains no other comma.
bool is_decimal_comma(std::string_view s, std::size_t at) {
  if (at == 0 || at + 1 >= s.size() || !is_digit(s[at - 1]) || !is_digit(s[at + 1])) return false;
  std::size_t lo = at;
  while (lo > 0 && (is_digit(s[lo - 1]) || s[lo - 1] == ',')) --lo;
  std::size_t hi = at + 1;
  while (hi < s.size() && (is_digit(s[hi]) || s[hi] == ',')) ++hi;
  int commas = 0;
  for (std::size_t i = lo; i < hi; ++i) commas += s[i] == ',';
  return commas == 1;
}

}  // namespace

std::string standardize_notation(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (is_ascii_alpha(c)) {
      std::size_t j = i;
      while (j < text.size() && is_ascii_alpha(text[j])) ++j;
      std::string_view word = text.substr(i, j - i);
      for (const auto& [from, to] : kWordRules) {
        if (word == from) {
          word = to;
          break;
        }
      }
      out += word;
      i = j;
    } else if (c == ',' && is_decimal_comma(text, i)) {
      out += '.';
      ++i;
    } else if (text.substr(i, 2) == "\xC2\xB7" || text.substr(i, 2) == "\xC3\x97") {
      out += '*';
      i += 2;
    } else {
      out += c;
      ++i;
    }
  }
  return out;
}

bool has_cyrillic(std::string_view text) {
  for (std::size_t i = 0; i + 1 < text.size(); ++i) {
    const auto lead = static_cast<unsigned char>(text[i]);
    if (lead == 0xD0 || lead == 0xD1) {
      const auto next = static_cast<unsigned char>(text[i + 1]);
      if (next >= 0x80 && next <= 0xBF) return true;
    }
  }
  return false;
}

}  // namespace herald::preprocess
