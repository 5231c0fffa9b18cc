#include "herald/answer/lexer.hpp"

#include "herald/answer/errors.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace herald::answer {

namespace {

constexpr int kMaxLiteralExponent = 4096;

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

struct CodePoint {
  char32_t value = 0;
  std::size_t length = 1;
};

// Lenient UTF-8 decode; malformed bytes decode as themselves with length 1.
CodePoint decode_utf8(std::string_view s, std::size_t pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  auto cont = [&](std::size_t i) -> std::optional<unsigned> {
    if (pos + i >= s.size()) return std::nullopt;
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) return std::nullopt;
    return b & 0x3Fu;
  };
  if (b0 < 0x80) return {b0, 1};
  if ((b0 & 0xE0) == 0xC0) {
    if (auto c1 = cont(1)) return {static_cast<char32_t>(((b0 & 0x1Fu) << 6) | *c1), 2};
  } else if ((b0 & 0xF0) == 0xE0) {
    auto c1 = cont(1);
    auto c2 = cont(2);
    if (c1 && c2) return {static_cast<char32_t>(((b0 & 0x0Fu) << 12) | (*c1 << 6) | *c2), 3};
  } else if ((b0 & 0xF8) == 0xF0) {
    auto c1 = cont(1);
    auto c2 = cont(2);
    auto c3 = cont(3);
    if (c1 && c2 && c3) {
      return {static_cast<char32_t>(((b0 & 0x07u) << 18) | (*c1 << 12) | (*c2 << 6) | *c3), 4};
    }
  }
  return {b0, 1};
}

bool is_unicode_space(char32_t cp) { return cp == 0x00A0 || cp == 0x2009 || cp == 0x202F; }

bool is_unicode_letter(char32_t cp) {
  return (cp >= 0x00C0 && cp <= 0x024F && cp != 0x00D7 && cp != 0x00F7) ||
         (cp >= 0x0370 && cp <= 0x03FF && cp != 0x03C0) || (cp >= 0x0400 && cp <= 0x04FF);
}

Rational pow10(int exponent) {
  BigInt p = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::abs(exponent)));
  return exponent >= 0 ? Rational(p) : Rational(BigInt(1), p);
}

class Lexer {
 public:
  Lexer(std::string_view src, Locale locale, bool permissive)
      : src_(src), locale_(locale), permissive_(permissive) {}

  std::vector<Token> run() {
    while (pos_ < src_.size()) step();
    return std::move(out_);
  }

 private:
  void step() {
    const char c = src_[pos_];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++pos_;
      return;
    }
    if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
      number();
      return;
    }
    switch (c) {
      case '+': return simple(TokenKind::Plus, 1);
      case '-': return simple(TokenKind::Minus, 1);
      case '*': return simple(TokenKind::Times, 1);
      case '/': return simple(TokenKind::Divide, 1);
      case '^': return simple(TokenKind::Power, 1);
      case '(': return simple(TokenKind::LParen, 1);
      case ')': return simple(TokenKind::RParen, 1);
      case '{': return simple(TokenKind::LBrace, 1);
      case '}': return simple(TokenKind::RBrace, 1);
      case '=':
      case '<':
      case '>': return simple(TokenKind::Relation, 1);
      case '\\': return command();
      default: break;
    }
    if (is_ascii_alpha(c)) {
      letters();
      return;
    }
    if (static_cast<unsigned char>(c) >= 0x80) {
      unicode();
      return;
    }
    reject(1, "unexpected character");
  }

  void simple(TokenKind kind, std::size_t length) {
    Token t;
    t.kind = kind;
    t.position = pos_;
    t.text = std::string(src_.substr(pos_, length));
    out_.push_back(std::move(t));
    pos_ += length;
  }

  // Strict mode throws; permissive mode records the bytes as punctuation.
  void reject(std::size_t length, const char* what) {
    if (!permissive_) throw LexError(pos_, what);
    simple(TokenKind::Punct, length);
  }

  bool is_decimal_separator(std::size_t at) const {
    if (at + 1 >= src_.size() || !is_digit(src_[at + 1])) return false;
    return src_[at] == '.' || (src_[at] == ',' && locale_ == Locale::Comma);
  }

  void number() {
    const std::size_t start = pos_;
    std::string digits;
    while (pos_ < src_.size() && is_digit(src_[pos_])) digits += src_[pos_++];
    int scale = 0;
    if (pos_ < src_.size() && (digits.empty() || is_decimal_separator(pos_))) {
      ++pos_;  // separator
      while (pos_ < src_.size() && is_digit(src_[pos_])) {
        digits += src_[pos_++];
        --scale;
      }
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      bool negative = false;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) {
        negative = src_[look] == '-';
        ++look;
      }
      if (look < src_.size() && is_digit(src_[look])) {
        long exponent = 0;
        while (look < src_.size() && is_digit(src_[look])) {
          exponent = std::min<long>(exponent * 10 + (src_[look] - '0'), 1'000'000);
          ++look;
        }
        if (exponent > kMaxLiteralExponent) {
          if (!permissive_) throw LexError(start, "exponent out of range");
          exponent = kMaxLiteralExponent;
        }
        scale += static_cast<int>(negative ? -exponent : exponent);
        pos_ = look;
      }
    }
    Token t;
    t.kind = TokenKind::Number;
    t.position = start;
    t.text = std::string(src_.substr(start, pos_ - start));
    // cpp_int reads a leading 0 as an octal prefix.
    const auto first = digits.find_first_not_of('0');
    t.value = Rational(BigInt(first == std::string::npos ? std::string("0") : digits.substr(first))) * pow10(scale);
    out_.push_back(std::move(t));
  }

  void letters() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_ascii_alpha(src_[pos_])) ++pos_;
    std::string run(src_.substr(start, pos_ - start));
    // A run glued to non-ASCII letters is prose, not mathematics.
    if (pos_ < src_.size() && static_cast<unsigned char>(src_[pos_]) >= 0x80 &&
        is_unicode_letter(decode_utf8(src_, pos_).value)) {
      pos_ = start;
      unicode_word();
      return;
    }
    classify_name(run, start, false);
  }

  void classify_name(const std::string& run, std::size_t start, bool from_command) {
    std::string lower = run;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    Token t;
    t.position = start;
    t.text = run;
    if (auto f = function_from_name(run.size() > 1 ? lower : run)) {
      t.kind = TokenKind::Function;
      t.function = *f;
    } else if (lower == "pi" && run.size() == 2) {
      t.kind = TokenKind::Constant;
      t.constant = Constant::Pi;
    } else if (run == "e" && !from_command) {
      t.kind = TokenKind::Constant;
      t.constant = Constant::E;
    } else if (run.size() == 1 && !from_command) {
      t.kind = TokenKind::Identifier;
    } else {
      if (!permissive_) throw LexError(start, "unknown name '" + run + "'");
      t.kind = TokenKind::Word;
    }
    out_.push_back(std::move(t));
  }

  void command() {
    const std::size_t start = pos_;
    std::size_t look = pos_ + 1;
    while (look < src_.size() && is_ascii_alpha(src_[look])) ++look;
    if (look == pos_ + 1) {
      // Control symbols: LaTeX spacing commands are whitespace.
      if (look < src_.size() && (src_[look] == ',' || src_[look] == ';' || src_[look] == '!' ||
                                 src_[look] == ':' || src_[look] == ' ')) {
        pos_ = look + 1;
        return;
      }
      reject(look < src_.size() ? 2 : 1, "unsupported control symbol");
      return;
    }
    const std::string name(src_.substr(pos_ + 1, look - pos_ - 1));
    pos_ = look;
    Token t;
    t.position = start;
    t.text = std::string(src_.substr(start, look - start));
    if (name == "frac" || name == "dfrac" || name == "tfrac") {
      t.kind = TokenKind::Frac;
    } else if (name == "cdot" || name == "times") {
      t.kind = TokenKind::Times;
    } else if (name == "div") {
      t.kind = TokenKind::Divide;
    } else if (name == "pi") {
      t.kind = TokenKind::Constant;
      t.constant = Constant::Pi;
    } else if (name == "left" || name == "right") {
      return;
    } else if (name == "le" || name == "leq" || name == "ge" || name == "geq" || name == "ne" ||
               name == "neq") {
      t.kind = TokenKind::Relation;
    } else if (auto f = function_from_name(name)) {
      t.kind = TokenKind::Function;
      t.function = *f;
    } else {
      if (!permissive_) throw LexError(start, "unsupported command \\" + name);
      t.kind = TokenKind::Word;
    }
    out_.push_back(std::move(t));
  }

  void unicode() {
    const CodePoint cp = decode_utf8(src_, pos_);
    switch (cp.value) {
      case 0x2212:  // minus sign
      case 0x2013:  // en dash
        return simple(TokenKind::Minus, cp.length);
      case 0x00D7:  // multiplication sign
      case 0x00B7:  // middle dot
      case 0x22C5:  // dot operator
      case 0x2219:  // bullet operator
        return simple(TokenKind::Times, cp.length);
      case 0x00F7:
        return simple(TokenKind::Divide, cp.length);
      case 0x221A:
        return simple(TokenKind::Root, cp.length);
      case 0x2264:
      case 0x2265:
      case 0x2260:
        return simple(TokenKind::Relation, cp.length);
      case 0x03C0: {
        Token t;
        t.kind = TokenKind::Constant;
        t.constant = Constant::Pi;
        t.position = pos_;
        t.text = std::string(src_.substr(pos_, cp.length));
        out_.push_back(std::move(t));
        pos_ += cp.length;
        return;
      }
      default:
        break;
    }
    if (is_unicode_space(cp.value)) {
      pos_ += cp.length;
      return;
    }
    if (is_unicode_letter(cp.value)) {
      if (!permissive_) throw LexError(pos_, "non-mathematical text");
      unicode_word();
      return;
    }
    reject(cp.length, "unexpected character");
  }

  // Consumes a run of ASCII and non-ASCII letters as one Word.
  void unicode_word() {
    const std::size_t start = pos_;
    while (pos_ < src_.size()) {
      if (is_ascii_alpha(src_[pos_])) {
        ++pos_;
        continue;
      }
      if (static_cast<unsigned char>(src_[pos_]) >= 0x80) {
        const CodePoint cp = decode_utf8(src_, pos_);
        if (is_unicode_letter(cp.value)) {
          pos_ += cp.length;
          continue;
        }
      }
      break;
    }
    if (!permissive_) throw LexError(start, "non-mathematical text");
    Token t;
    t.kind = TokenKind::Word;
    t.position = start;
    t.text = std::string(src_.substr(start, pos_ - start));
    out_.push_back(std::move(t));
  }

  std::string_view src_;
  Locale locale_;
  bool permissive_;
  std::size_t pos_ = 0;
  std::vector<Token> out_;
};

bool is_plain_integer(const Token& t) {
  return t.kind == TokenKind::Number && !t.text.empty() &&
         std::all_of(t.text.begin(), t.text.end(), [](char c) { return is_digit(c); });
}

// Folds "a × 10 ^ b" and "a × 10 ^ {b}" into one Number token unless the
// surrounding operators bind tighter than the multiplication would.
std::vector<Token> fold_scientific(std::vector<Token> tokens) {
  std::vector<Token> out;
  out.reserve(tokens.size());
  std::size_t i = 0;
  while (i < tokens.size()) {
    const bool prev_blocks =
        !out.empty() && (out.back().kind == TokenKind::Power || out.back().kind == TokenKind::Divide);
    if (!prev_blocks && i + 4 < tokens.size() && tokens[i].kind == TokenKind::Number &&
        tokens[i + 1].kind == TokenKind::Times && is_plain_integer(tokens[i + 2]) &&
        tokens[i + 2].text == "10" && tokens[i + 3].kind == TokenKind::Power) {
      std::size_t j = i + 4;
      const bool braced = tokens[j].kind == TokenKind::LBrace;
      if (braced) ++j;
      bool negative = false;
      if (j < tokens.size() && (tokens[j].kind == TokenKind::Minus || tokens[j].kind == TokenKind::Plus)) {
        negative = tokens[j].kind == TokenKind::Minus;
        ++j;
      }
      if (j < tokens.size() && is_plain_integer(tokens[j]) && tokens[j].text.size() <= 4) {
        const int exponent = std::stoi(tokens[j].text);
        std::size_t end = j + 1;
        bool ok = exponent <= kMaxLiteralExponent;
        if (braced) {
          ok = ok && end < tokens.size() && tokens[end].kind == TokenKind::RBrace;
          ++end;
        }
        ok = ok && (end >= tokens.size() || tokens[end].kind != TokenKind::Power);
        if (ok) {
          Token t = tokens[i];
          t.value = tokens[i].value * pow10(negative ? -exponent : exponent);
          t.text.clear();
          for (std::size_t k = i; k < end; ++k) t.text += tokens[k].text;
          out.push_back(std::move(t));
          i = end;
          continue;
        }
      }
    }
    out.push_back(std::move(tokens[i]));
    ++i;
  }
  return out;
}

}  // namespace

std::vector<Token> tokenize(std::string_view raw, Locale locale) {
  return fold_scientific(Lexer(raw, locale, false).run());
}

std::vector<Token> tokenize_permissive(std::string_view text, Locale locale) {
  return Lexer(text, locale, true).run();
}

bool is_operator_token(const Token& t) {
  switch (t.kind) {
    case TokenKind::Plus:
    case TokenKind::Minus:
    case TokenKind::Times:
    case TokenKind::Divide:
    case TokenKind::Power:
    case TokenKind::Relation:
    case TokenKind::Root:
      return true;
    default:
      return false;
  }
}

}  // namespace herald::answer
