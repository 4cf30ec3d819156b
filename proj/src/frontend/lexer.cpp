#include "timedc/lexer.hpp"

#include <array>
#include <cctype>
#include <charconv>

namespace timedc {
namespace {

constexpr std::array<std::string_view, 16> kKeywords = {
    "void", "int",   "unsigned", "signed", "char",   "const",  "extern", "if",
    "else", "while", "for",      "return", "assert", "__VERIFIER_assume", "static", "break",
};

// Longest match first.
constexpr std::array<std::string_view, 30> kPunctuators = {
    "+=", "-=", "*=", "/=", "%=", "++", "--", "<=", ">=", "==", "!=", "&&", "||", "(", ")",
    "{",  "}",  "[",  "]",  ";",  ",",  "=",  "+",  "-",  "*",  "/",  "%",  "<",  ">",  "!",
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  Lexer(const SourceUnit& src, LexOptions opts) : src_(src), text_(src.text()), opts_(opts) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_whitespace();
      if (pos_ >= text_.size()) break;
      const std::size_t start = pos_;
      const char c = text_[pos_];
      if (c == '/' && peek(1) == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        std::string lexeme = text_.substr(start, pos_ - start);
        if (!lexeme.empty() && lexeme.back() == '\r') lexeme.pop_back();
        const bool annotation = lexeme.starts_with("//@");
        if (annotation || opts_.keep_plain_comments) {
          out.push_back(make(annotation ? TokenKind::AnnotationComment : TokenKind::PlainComment,
                             start, std::move(lexeme)));
        }
        continue;
      }
      if (c == '/' && peek(1) == '*') {
        const std::size_t close = text_.find("*/", pos_ + 2);
        if (close == std::string::npos) fail(start, "unterminated block comment");
        pos_ = close + 2;
        if (opts_.keep_plain_comments) {
          out.push_back(make(TokenKind::PlainComment, start, text_.substr(start, pos_ - start)));
        }
        continue;
      }
      if (ident_start(c)) {
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        std::string word = text_.substr(start, pos_ - start);
        const TokenKind kind = is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier;
        out.push_back(make(kind, start, std::move(word)));
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        lex_number(start);
        out.push_back(make(TokenKind::IntegerLiteral, start, text_.substr(start, pos_ - start)));
        continue;
      }
      if (c == '\'') {
        lex_char(start);
        out.push_back(make(TokenKind::IntegerLiteral, start, text_.substr(start, pos_ - start)));
        continue;
      }
      bool matched = false;
      for (std::string_view p : kPunctuators) {
        if (text_.compare(pos_, p.size(), p) == 0) {
          pos_ += p.size();
          out.push_back(make(TokenKind::Punctuation, start, std::string(p)));
          matched = true;
          break;
        }
      }
      if (!matched) {
        std::string shown = std::isprint(static_cast<unsigned char>(c))
                                ? std::string(1, c)
                                : "\\x" + std::to_string(static_cast<unsigned char>(c));
        fail(start, "illegal character '" + shown + "'");
      }
    }
    out.push_back(make(TokenKind::EndOfInput, text_.size(), ""));
    return out;
  }

 private:
  char peek(std::size_t ahead) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void skip_whitespace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void lex_number(std::size_t start) {
    if (text_[pos_] == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      pos_ += 2;
      if (!std::isxdigit(static_cast<unsigned char>(peek(0)))) fail(start, "malformed hex literal");
      while (std::isxdigit(static_cast<unsigned char>(peek(0)))) ++pos_;
    } else {
      while (std::isdigit(static_cast<unsigned char>(peek(0)))) ++pos_;
    }
    while (peek(0) == 'u' || peek(0) == 'U' || peek(0) == 'l' || peek(0) == 'L') ++pos_;
    if (ident_char(peek(0))) fail(start, "malformed integer literal");
  }

  void lex_char(std::size_t start) {
    ++pos_;
    if (peek(0) == '\\') pos_ += 2;
    else if (peek(0) != '\'' && peek(0) != '\n' && peek(0) != '\0') ++pos_;
    else fail(start, "empty character literal");
    if (peek(0) != '\'') fail(start, "unterminated character literal");
    ++pos_;
  }

  Token make(TokenKind kind, std::size_t start, std::string lexeme) const {
    return Token{kind, std::move(lexeme), src_.location_of(start), start};
  }

  [[noreturn]] void fail(std::size_t offset, const std::string& msg) const {
    throw FrontendError(DiagnosticKind::Lex, src_.path(), src_.location_of(offset), msg);
  }

  const SourceUnit& src_;
  const std::string& text_;
  LexOptions opts_;
  std::size_t pos_ = 0;
};

}  // namespace

const char* to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::IntegerLiteral: return "integer-literal";
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Punctuation: return "punctuation";
    case TokenKind::AnnotationComment: return "annotation-comment";
    case TokenKind::PlainComment: return "plain-comment";
    case TokenKind::EndOfInput: return "end-of-input";
  }
  return "?";
}

bool is_keyword(std::string_view word) {
  for (auto k : kKeywords) {
    if (k == word) return true;
  }
  return false;
}

std::vector<Token> tokenize(const SourceUnit& src, LexOptions options) {
  return Lexer(src, options).run();
}

std::int64_t literal_value(const Token& token) {
  std::string_view s = token.lexeme;
  if (s.size() >= 3 && s.front() == '\'') {
    if (s[1] != '\\') return static_cast<unsigned char>(s[1]);
    switch (s[2]) {
      case 'n': return '\n';
      case 't': return '\t';
      case 'r': return '\r';
      case '0': return 0;
      default: return static_cast<unsigned char>(s[2]);
    }
  }
  while (!s.empty() && (s.back() == 'u' || s.back() == 'U' || s.back() == 'l' || s.back() == 'L')) {
    s.remove_suffix(1);
  }
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    base = 16;
    s.remove_prefix(2);
  } else if (s.size() > 1 && s[0] == '0') {
    base = 8;
    s.remove_prefix(1);
  }
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, base);
  if (ec != std::errc() || ptr != s.data() + s.size() || value > static_cast<std::uint64_t>(INT64_MAX)) {
    throw FrontendError(DiagnosticKind::Lex, "", token.loc,
                        "integer literal out of range: " + token.lexeme);
  }
  return static_cast<std::int64_t>(value);
}

}  // namespace timedc
