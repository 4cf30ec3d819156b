#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace timedc {

struct SourceLocation {
  std::uint32_t line = 0;
  std::uint32_t column = 0;

  friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

// A named chunk of program text plus the byte offset of every line start.
class SourceUnit {
 public:
  SourceUnit(std::string path, std::string text);

  const std::string& path() const { return path_; }
  const std::string& text() const { return text_; }
  std::span<const std::size_t> line_index() const { return line_starts_; }
  std::size_t line_count() const { return line_starts_.size(); }

  SourceLocation location_of(std::size_t offset) const;
  std::string_view line_text(std::uint32_t line) const;

 private:
  std::string path_;
  std::string text_;
  std::vector<std::size_t> line_starts_;
};

enum class Severity { Note, Warning, Error };

enum class DiagnosticKind {
  Io,
  Preprocess,
  Lex,
  Parse,
  Recursion,
  AnnotationSyntax,
  Bind,
  NameClash,
  Semantic,
};

struct Diagnostic {
  Severity severity = Severity::Error;
  DiagnosticKind kind = DiagnosticKind::Semantic;
  std::string file;
  SourceLocation loc;
  std::string message;

  // file:line:col: severity: message
  std::string format() const;
};

const char* to_string(Severity severity);
const char* to_string(DiagnosticKind kind);

// Thrown by every frontend stage; carries at least one error diagnostic.
class FrontendError : public std::runtime_error {
 public:
  explicit FrontendError(std::vector<Diagnostic> diagnostics);
  FrontendError(DiagnosticKind kind, std::string file, SourceLocation loc,
                std::string message);

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }
  DiagnosticKind kind() const { return diagnostics_.front().kind; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

SourceUnit read_source_file(const std::string& path);

}  // namespace timedc
