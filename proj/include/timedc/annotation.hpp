#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "timedc/ast.hpp"
#include "timedc/lexer.hpp"

namespace timedc {

// Parses one `//@` comment into an Annotation. Keywords are matched
// case-insensitively, a trailing `;` is optional, a trailing `// ...` remark is
// ignored, and RESET-TIMER tolerates an `=0` suffix.
//
// Throws FrontendError(AnnotationSyntax) for an unknown keyword, malformed
// expression, operator outside the assertion language, or negative WCET.
Annotation parse_annotation(const Token& token, const std::string& file);

// Same grammar, applied to an echo comment ("// RESET-TIMER T;") as written
// by the instrumenter. Returns nullopt when the comment is not an echo.
std::optional<Annotation> parse_echo_comment(const Token& token, const std::string& file);

// True when a plain `//` comment has the echo shape.
bool is_echo_comment(std::string_view lexeme);

}  // namespace timedc
