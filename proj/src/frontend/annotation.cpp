#include "timedc/annotation.hpp"

#include <array>
#include <cctype>

#include "timedc/parser.hpp"

namespace timedc {
namespace {

struct KeywordSpelling {
  AnnotationKind kind;
  std::string_view text;
};

constexpr std::array<KeywordSpelling, 4> kKeywords = {{
    {AnnotationKind::DefineTimer, "DEFINE-TIMER"},
    {AnnotationKind::ResetTimer, "RESET-TIMER"},
    {AnnotationKind::AssertTimer, "ASSERT-TIMER"},
    {AnnotationKind::WcetFunction, "WCET-FUNCTION"},
}};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(a[i])) != std::toupper(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s.front()))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return !is_keyword(s);
}

// Leading keyword of an annotation body, plus the text after it.
std::optional<std::pair<AnnotationKind, std::string_view>> split_keyword(std::string_view body) {
  std::size_t n = 0;
  while (n < body.size() && (std::isalpha(static_cast<unsigned char>(body[n])) || body[n] == '-')) ++n;
  const std::string_view word = body.substr(0, n);
  for (const auto& k : kKeywords) {
    if (iequals(word, k.text)) return std::make_pair(k.kind, body.substr(n));
  }
  return std::nullopt;
}

class AnnotationParser {
 public:
  AnnotationParser(const Token& token, const std::string& file, std::size_t prefix_len)
      : token_(token), file_(file), prefix_len_(prefix_len) {}

  Annotation run() {
    std::string_view body = std::string_view(token_.lexeme).substr(prefix_len_);
    Annotation ann;
    ann.raw = std::string(trim(body));
    ann.loc = token_.loc;

    body = trim(body);
    auto split = split_keyword(body);
    if (!split) {
      std::size_t n = 0;
      while (n < body.size() && !std::isspace(static_cast<unsigned char>(body[n]))) ++n;
      fail("unknown annotation keyword '" + std::string(body.substr(0, n)) + "'");
    }
    ann.kind = split->first;
    std::string_view rest = strip_tail(split->second);

    switch (ann.kind) {
      case AnnotationKind::DefineTimer: {
        rest = trim(rest);
        if (!is_identifier(rest)) fail("DEFINE-TIMER expects a timer name");
        ann.timer = std::string(rest);
        break;
      }
      case AnnotationKind::ResetTimer: {
        rest = trim(rest);
        std::size_t n = 0;
        while (n < rest.size() && (std::isalnum(static_cast<unsigned char>(rest[n])) || rest[n] == '_')) ++n;
        const std::string_view name = rest.substr(0, n);
        if (!is_identifier(name)) fail("RESET-TIMER expects a timer name");
        std::string_view suffix = trim(rest.substr(n));
        if (!suffix.empty()) {
          if (suffix.front() != '=' || trim(suffix.substr(1)) != "0") {
            fail("RESET-TIMER only accepts an optional '=0' suffix");
          }
        }
        ann.timer = std::string(name);
        break;
      }
      case AnnotationKind::AssertTimer: {
        if (trim(rest).empty()) fail("ASSERT-TIMER expects a condition");
        Expr e = parse_fragment(rest);
        check_assert_ops(e);
        ann.expr = std::move(e);
        break;
      }
      case AnnotationKind::WcetFunction: {
        std::string_view inner = trim(rest);
        if (inner.size() < 2 || inner.front() != '[' || inner.back() != ']') {
          fail("WCET-FUNCTION expects a bracketed duration, e.g. [5000]");
        }
        inner = inner.substr(1, inner.size() - 2);
        if (trim(inner).empty()) fail("WCET-FUNCTION duration is empty");
        Expr e = parse_fragment(inner);
        check_wcet_ops(e);
        if (auto value = fold_literal(e)) {
          if (*value < 0) fail("negative WCET " + std::to_string(*value));
          ann.duration = static_cast<std::uint64_t>(*value);
        }
        ann.expr = std::move(e);
        break;
      }
    }
    return ann;
  }

 private:
  // Drops a trailing "// remark" and then a trailing ';'.
  static std::string_view strip_tail(std::string_view s) {
    if (auto pos = s.find("//"); pos != std::string_view::npos) s = s.substr(0, pos);
    s = trim(s);
    if (!s.empty() && s.back() == ';') s.remove_suffix(1);
    return s;
  }

  Expr parse_fragment(std::string_view text) {
    const std::size_t offset = static_cast<std::size_t>(text.data() - token_.lexeme.data());
    std::vector<Token> tokens;
    try {
      tokens = tokenize(SourceUnit(file_, std::string(text)));
    } catch (const FrontendError& e) {
      fail("malformed expression: " + e.diagnostics().front().message);
    }
    for (auto& t : tokens) {
      t.loc = {token_.loc.line, static_cast<std::uint32_t>(token_.loc.column + offset + t.loc.column - 1)};
    }
    try {
      return parse_expression(tokens, file_);
    } catch (const FrontendError& e) {
      throw FrontendError(DiagnosticKind::AnnotationSyntax, file_, e.diagnostics().front().loc,
                          "malformed expression: " + e.diagnostics().front().message);
    }
  }

  void check_assert_ops(const Expr& e) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, UnaryExpr>) {
            check_assert_ops(*n.operand);
          } else if constexpr (std::is_same_v<T, BinaryExpr>) {
            if (n.op == BinaryOp::Div || n.op == BinaryOp::Mod) {
              fail(std::string("operator '") + spelling(n.op) + "' is not allowed in ASSERT-TIMER");
            }
            check_assert_ops(*n.lhs);
            check_assert_ops(*n.rhs);
          } else if constexpr (std::is_same_v<T, CallExpr> || std::is_same_v<T, IndexExpr>) {
            fail("ASSERT-TIMER may only use timers, integer constants and operators");
          }
        },
        e.node);
  }

  void check_wcet_ops(const Expr& e) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, UnaryExpr>) {
            if (n.op != UnaryOp::Negate) fail("WCET-FUNCTION duration must be an integer expression");
            check_wcet_ops(*n.operand);
          } else if constexpr (std::is_same_v<T, BinaryExpr>) {
            if (n.op != BinaryOp::Add && n.op != BinaryOp::Sub && n.op != BinaryOp::Mul) {
              fail("WCET-FUNCTION duration must be an integer expression");
            }
            check_wcet_ops(*n.lhs);
            check_wcet_ops(*n.rhs);
          } else if constexpr (std::is_same_v<T, CallExpr> || std::is_same_v<T, IndexExpr>) {
            fail("WCET-FUNCTION duration must be an integer expression");
          }
        },
        e.node);
  }

  // Value of an expression made only of literals, or nullopt.
  static std::optional<std::int64_t> fold_literal(const Expr& e) {
    return std::visit(
        [](const auto& n) -> std::optional<std::int64_t> {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, IntLiteral>) {
            return n.value;
          } else if constexpr (std::is_same_v<T, UnaryExpr>) {
            auto v = fold_literal(*n.operand);
            if (!v) return std::nullopt;
            return n.op == UnaryOp::Negate ? -*v : static_cast<std::int64_t>(*v == 0);
          } else if constexpr (std::is_same_v<T, BinaryExpr>) {
            auto l = fold_literal(*n.lhs);
            auto r = fold_literal(*n.rhs);
            if (!l || !r) return std::nullopt;
            switch (n.op) {
              case BinaryOp::Add: return *l + *r;
              case BinaryOp::Sub: return *l - *r;
              case BinaryOp::Mul: return *l * *r;
              default: return std::nullopt;
            }
          } else {
            return std::nullopt;
          }
        },
        e.node);
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw FrontendError(DiagnosticKind::AnnotationSyntax, file_, token_.loc, msg);
  }

  const Token& token_;
  const std::string& file_;
  std::size_t prefix_len_;
};

}  // namespace

Annotation parse_annotation(const Token& token, const std::string& file) {
  if (token.kind != TokenKind::AnnotationComment || !token.lexeme.starts_with("//@")) {
    throw FrontendError(DiagnosticKind::AnnotationSyntax, file, token.loc,
                        "not an annotation comment");
  }
  return AnnotationParser(token, file, 3).run();
}

bool is_echo_comment(std::string_view lexeme) {
  if (!lexeme.starts_with("//") || lexeme.starts_with("//@")) return false;
  return split_keyword(trim(lexeme.substr(2))).has_value();
}

std::optional<Annotation> parse_echo_comment(const Token& token, const std::string& file) {
  if (token.kind != TokenKind::PlainComment || !is_echo_comment(token.lexeme)) return std::nullopt;
  return AnnotationParser(token, file, 2).run();
}

}  // namespace timedc
