#include "timedc/preprocessor.hpp"

#include <cctype>
#include <vector>

namespace timedc {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s.front()))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

struct Frame {
  bool parent_active;
  bool condition;
  bool in_else = false;
  std::uint32_t line;
};

class Evaluator {
 public:
  Evaluator(const std::set<std::string>& defines, const std::string& file, std::uint32_t line)
      : defines_(defines), file_(file), line_(line) {}

  // Accepts 0, 1, FLAG, defined(FLAG), defined FLAG, each optionally negated.
  bool eval(std::string_view expr) {
    expr = trim(expr);
    if (!expr.empty() && expr.front() == '!') return !eval(expr.substr(1));
    if (expr == "0") return false;
    if (expr == "1") return true;
    if (expr.starts_with("defined")) {
      std::string_view rest = trim(expr.substr(7));
      if (!rest.empty() && rest.front() == '(') {
        if (rest.back() != ')') fail("malformed defined() in #if");
        rest = trim(rest.substr(1, rest.size() - 2));
      }
      if (!is_identifier(rest)) fail("expected flag name in defined()");
      return defines_.contains(std::string(rest));
    }
    if (!is_identifier(expr)) fail("unsupported #if expression '" + std::string(expr) + "'");
    return defines_.contains(std::string(expr));
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw FrontendError(DiagnosticKind::Preprocess, file_, {line_, 1}, msg);
  }

  const std::set<std::string>& defines_;
  const std::string& file_;
  std::uint32_t line_;
};

}  // namespace

SourceUnit preprocess(const SourceUnit& src, const std::set<std::string>& defines) {
  std::set<std::string> flags = defines;
  flags.insert(kToolFlag);

  std::vector<Frame> stack;
  auto active = [&] { return stack.empty() || (stack.back().parent_active && stack.back().condition); };

  std::string out;
  out.reserve(src.text().size());
  const std::string& text = src.text();
  std::size_t pos = 0;
  std::uint32_t line = 0;
  while (pos < text.size()) {
    ++line;
    std::size_t end = text.find('\n', pos);
    const bool has_newline = end != std::string::npos;
    if (!has_newline) end = text.size();
    std::string_view raw(text.data() + pos, end - pos);
    std::string_view body = trim(raw);

    auto fail = [&](const std::string& msg) -> void {
      throw FrontendError(DiagnosticKind::Preprocess, src.path(), {line, 1}, msg);
    };

    bool keep = false;
    if (!body.empty() && body.front() == '#') {
      std::string_view directive = trim(body.substr(1));
      std::size_t word_end = 0;
      while (word_end < directive.size() && std::isalpha(static_cast<unsigned char>(directive[word_end]))) ++word_end;
      const std::string_view word = directive.substr(0, word_end);
      const std::string_view arg = trim(directive.substr(word_end));
      Evaluator ev(flags, src.path(), line);
      if (word == "if") {
        stack.push_back({active(), active() ? ev.eval(arg) : false, false, line});
      } else if (word == "ifdef" || word == "ifndef") {
        if (!is_identifier(arg)) fail("expected flag name after #" + std::string(word));
        const bool defined = flags.contains(std::string(arg));
        stack.push_back({active(), word == "ifdef" ? defined : !defined, false, line});
      } else if (word == "else") {
        if (stack.empty() || stack.back().in_else) fail("#else without matching #if");
        stack.back().in_else = true;
        stack.back().condition = !stack.back().condition;
      } else if (word == "endif") {
        if (stack.empty()) fail("#endif without matching #if");
        stack.pop_back();
      } else if (word == "include") {
        // dropped: the subset has no headers to read
      } else if (word == "define" || word == "undef") {
        if (active()) fail("macro definitions are not supported; use const globals or --define");
      } else {
        if (active()) fail("unsupported preprocessor directive '#" + std::string(word) + "'");
      }
    } else {
      keep = active();
    }

    if (keep) out.append(raw);
    if (has_newline) out.push_back('\n');
    pos = has_newline ? end + 1 : end;
  }
  if (!stack.empty()) {
    throw FrontendError(DiagnosticKind::Preprocess, src.path(), {stack.back().line, 1},
                        "unterminated #if block");
  }
  return SourceUnit(src.path(), std::move(out));
}

}  // namespace timedc
