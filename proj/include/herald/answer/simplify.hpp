#pragma once

#include "herald/answer/expr.hpp"
#include "herald/answer/lexer.hpp"
#include "herald/answer/value.hpp"

#include <optional>
#include <string_view>

namespace herald::answer {

// Folds every subtree whose value is a rational number reachable with exact
// arithmetic (field operations, integer powers, perfect roots, and a few
// special values such as sin(0) and log(1)). Subtrees that would need
// irrational arithmetic are left intact. Throws DomainError on division by
// exact zero, log of a non-positive rational, even roots of negative
// rationals and similar.
Expr fold_constants(const Expr& e);

// Exact and Decimal values are returned unchanged. Symbolic trees are
// folded; a variable-free tree collapses to Exact when it folds to a single
// rational and to a 10-digit Decimal otherwise. Idempotent.
AnswerValue simplify(const AnswerValue& v);

// simplify(parse(raw)). Propagates DomainError.
AnswerValue normalize(std::string_view raw, Locale locale = Locale::Point);

// As normalize, but a DomainError yields Unparsed(raw).
AnswerValue normalize_or_unparsed(std::string_view raw, Locale locale = Locale::Point);

}  // namespace herald::answer
