#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace herald::answer {

// A character or character sequence outside the answer grammar.
class LexError : public std::runtime_error {
 public:
  LexError(std::size_t position, const std::string& what)
      : std::runtime_error(what + " at byte " + std::to_string(position)), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Token sequence that does not form an expression.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Division by exact zero, logarithm of a non-positive value, even root of a
// negative value and similar undefined real operations.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace herald::answer
