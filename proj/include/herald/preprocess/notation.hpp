#pragma once

#include <string>
#include <string_view>

namespace herald::preprocess {

// Rewrites tg/ctg/arctg as tan/cot/arctan (whole words only), a comma
// between two digits as a decimal point unless it belongs to a list such as
// "1,2,3", and "·" / "×" as "*". Idempotent.
std::string standardize_notation(std::string_view text);

// True when the text contains at least one Cyrillic letter.
bool has_cyrillic(std::string_view text);

}  // namespace herald::preprocess
