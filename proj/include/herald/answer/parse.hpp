#pragma once

#include "herald/answer/expr.hpp"
#include "herald/answer/lexer.hpp"
#include "herald/answer/value.hpp"

#include <string>
#include <string_view>

namespace herald::answer {

// Parses a bare expression. Throws LexError or ParseError.
Expr parse_expression(std::string_view text, Locale locale);

// Narrows free-form solver output to the answer text: the last \boxed{...}
// group if any, else the text after the last "answer:"/"answer is"/"Ответ:"
// marker, with math delimiters and a trailing period removed.
std::string extract_answer_text(std::string_view raw);

// Never throws. A lone literal or a fraction of two literals becomes Exact;
// any other expression becomes Symbolic; anything outside the grammar
// (prose, intervals, sets, relations other than "x = ...") becomes Unparsed.
AnswerValue parse(std::string_view raw, Locale locale);

}  // namespace herald::answer
