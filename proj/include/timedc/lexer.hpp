#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "timedc/source.hpp"

namespace timedc {

enum class TokenKind {
  Identifier,
  IntegerLiteral,
  Keyword,
  Punctuation,
  AnnotationComment,  // a line comment starting with exactly "//@"
  PlainComment,
  EndOfInput,
};

const char* to_string(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::EndOfInput;
  std::string lexeme;
  SourceLocation loc;
  std::size_t offset = 0;  // byte offset of the lexeme in the source text

  bool is(TokenKind k, std::string_view text) const { return kind == k && lexeme == text; }
  bool is_punct(std::string_view text) const { return is(TokenKind::Punctuation, text); }
  bool is_keyword(std::string_view text) const { return is(TokenKind::Keyword, text); }
};

struct LexOptions {
  bool keep_plain_comments = false;
};

// Throws FrontendError(Lex) on an unterminated comment or literal, or an
// illegal character.
std::vector<Token> tokenize(const SourceUnit& src, LexOptions options = {});

// Value of an IntegerLiteral token (decimal, hex, octal or character form).
std::int64_t literal_value(const Token& token);

bool is_keyword(std::string_view word);

}  // namespace timedc
