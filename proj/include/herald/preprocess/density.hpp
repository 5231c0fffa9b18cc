#pragma once

#include <string_view>

namespace herald::preprocess {

inline constexpr double kDefaultTauSym = 0.25;

// Operator tokens (+ - * / ^ relations and the radical sign) over all
// numbers, names, operators and words produced by the permissive lexer.
// Brackets and punctuation are not counted. 0 for text without tokens.
double operator_density(std::string_view text);

}  // namespace herald::preprocess
