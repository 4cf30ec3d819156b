#include "timedc/source.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace timedc {

SourceUnit::SourceUnit(std::string path, std::string text)
    : path_(std::move(path)), text_(std::move(text)) {
  line_starts_.push_back(0);
  for (std::size_t i = 0; i < text_.size(); ++i) {
    if (text_[i] == '\n' && i + 1 < text_.size()) line_starts_.push_back(i + 1);
  }
}

SourceLocation SourceUnit::location_of(std::size_t offset) const {
  auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
  const auto line = static_cast<std::uint32_t>(it - line_starts_.begin());
  const std::size_t start = line_starts_[line - 1];
  return {line, static_cast<std::uint32_t>(offset - start + 1)};
}

std::string_view SourceUnit::line_text(std::uint32_t line) const {
  if (line == 0 || line > line_starts_.size()) return {};
  const std::size_t start = line_starts_[line - 1];
  std::size_t end = text_.find('\n', start);
  if (end == std::string::npos) end = text_.size();
  return std::string_view(text_).substr(start, end - start);
}

const char* to_string(Severity severity) {
  switch (severity) {
    case Severity::Note: return "note";
    case Severity::Warning: return "warning";
    case Severity::Error: return "error";
  }
  return "error";
}

const char* to_string(DiagnosticKind kind) {
  switch (kind) {
    case DiagnosticKind::Io: return "IoError";
    case DiagnosticKind::Preprocess: return "PreprocessError";
    case DiagnosticKind::Lex: return "LexError";
    case DiagnosticKind::Parse: return "ParseError";
    case DiagnosticKind::Recursion: return "RecursionError";
    case DiagnosticKind::AnnotationSyntax: return "AnnotationSyntaxError";
    case DiagnosticKind::Bind: return "BindError";
    case DiagnosticKind::NameClash: return "NameClash";
    case DiagnosticKind::Semantic: return "SemanticError";
  }
  return "Error";
}

std::string Diagnostic::format() const {
  std::ostringstream os;
  os << file << ':' << loc.line << ':' << loc.column << ": " << to_string(severity) << ": ";
  if (severity == Severity::Error) os << to_string(kind) << ": ";
  os << message;
  return os.str();
}

namespace {

std::string join_messages(const std::vector<Diagnostic>& diagnostics) {
  std::string out;
  for (const auto& d : diagnostics) {
    if (!out.empty()) out += '\n';
    out += d.format();
  }
  return out;
}

}  // namespace

FrontendError::FrontendError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join_messages(diagnostics)), diagnostics_(std::move(diagnostics)) {
  if (diagnostics_.empty()) {
    diagnostics_.push_back({Severity::Error, DiagnosticKind::Semantic, "", {}, "unknown error"});
  }
}

FrontendError::FrontendError(DiagnosticKind kind, std::string file, SourceLocation loc,
                             std::string message)
    : FrontendError(std::vector<Diagnostic>{
          Diagnostic{Severity::Error, kind, std::move(file), loc, std::move(message)}}) {}

SourceUnit read_source_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FrontendError(DiagnosticKind::Io, path, {}, "cannot open file for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw FrontendError(DiagnosticKind::Io, path, {}, "read failed");
  return SourceUnit(path, buf.str());
}

}  // namespace timedc
