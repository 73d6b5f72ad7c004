#pragma once

// Tokenizer for .kmut scripts. Lexing never fails: characters outside the
// language become error tokens, which the parser reports with their position.

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kmut::fe {

enum class TokenKind { ident, integer, punct, keyword, error, eof };

inline const char* to_string(TokenKind k) {
  switch (k) {
  case TokenKind::ident:
    return "identifier";
  case TokenKind::integer:
    return "integer";
  case TokenKind::punct:
    return "punctuation";
  case TokenKind::keyword:
    return "keyword";
  case TokenKind::error:
    return "invalid character";
  case TokenKind::eof:
    return "end of input";
  }
  return "?";
}

struct Token {
  TokenKind kind = TokenKind::eof;
  std::string lexeme;
  int line = 1; // 1-based
  int column = 1;

  bool is(TokenKind k, std::string_view text) const { return kind == k && lexeme == text; }
  bool is_punct(std::string_view text) const { return is(TokenKind::punct, text); }
  bool is_keyword(std::string_view text) const { return is(TokenKind::keyword, text); }
};

class ParseError : public std::runtime_error {
public:
  ParseError(std::string message, int line, int column, std::string hint = {})
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        message_(std::move(message)), line_(line), column_(column), hint_(std::move(hint)) {}

  const std::string& message() const noexcept { return message_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  /// What the parser was looking for, if anything in particular.
  const std::string& hint() const noexcept { return hint_; }

private:
  std::string message_;
  int line_;
  int column_;
  std::string hint_;
};

inline bool is_keyword(std::string_view word) {
  static constexpr std::string_view keywords[] = {"space", "let",  "print", "assert", "lmut", "rmut",
                                                  "serre", "chi",  "chiH",  "chiY",   "gram", "exceptional"};
  for (auto k : keywords)
    if (k == word)
      return true;
  return false;
}

/// The stream carries no end marker. `#` starts a comment running to the end
/// of the line. A sign directly followed by a digit is part of an integer
/// literal when it stands where an operand may begin, so "O(2,1|-1)" has the
/// integer -1 while "a -1*b" does not.
inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1, col = 1;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      unsigned char c = static_cast<unsigned char>(src[i]);
      if (c == '\n') {
        ++line;
        col = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++col;
      }
    }
  };
  auto operand_may_start = [&] {
    if (out.empty())
      return true;
    const Token& t = out.back();
    if (t.kind == TokenKind::ident || t.kind == TokenKind::integer)
      return false;
    return !t.is_punct(")");
  };
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  auto is_ident_start = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };

  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n')
        advance(1);
      continue;
    }
    Token tok{TokenKind::error, "", line, col};
    std::size_t start = i;
    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && (is_ident_start(src[j]) || is_digit(src[j])))
        ++j;
      tok.lexeme = std::string(src.substr(start, j - start));
      tok.kind = is_keyword(tok.lexeme) ? TokenKind::keyword : TokenKind::ident;
      advance(j - i);
    } else if (is_digit(c) || ((c == '-' || c == '+') && i + 1 < src.size() && is_digit(src[i + 1]) &&
                               operand_may_start())) {
      std::size_t j = i + 1;
      while (j < src.size() && is_digit(src[j]))
        ++j;
      tok.kind = TokenKind::integer;
      tok.lexeme = std::string(src.substr(start, j - start));
      advance(j - i);
    } else if (c == '=' && i + 1 < src.size() && src[i + 1] == '=') {
      tok.kind = TokenKind::punct;
      tok.lexeme = "==";
      advance(2);
    } else if (std::string_view("(),|;=+-*").find(c) != std::string_view::npos) {
      tok.kind = TokenKind::punct;
      tok.lexeme = std::string(1, c);
      advance(1);
    } else {
      // One error token per character; a UTF-8 sequence counts as one.
      std::size_t j = i + 1;
      while (j < src.size() && (static_cast<unsigned char>(src[j]) & 0xC0) == 0x80)
        ++j;
      tok.lexeme = std::string(src.substr(start, j - start));
      advance(j - i);
    }
    out.push_back(std::move(tok));
  }
  return out;
}

} // namespace kmut::fe
