#pragma once

#include <string>

#include "timedc/ast.hpp"
#include "timedc/binder.hpp"

namespace timedc {

// Replaces every annotation by its explicit-time form: timer declarations,
// increments at the entry of WCET-annotated functions (timer-definition
// order), `T = 0;` resets and `assert (...)` checks. Each consumed annotation
// stays behind as a `// <text>` comment. A program without annotations comes
// back unchanged.
//
// Throws FrontendError(NameClash) when a timer name is already used as a
// program identifier.
Ast instrument(const AnnotatedProgram& program, const std::string& file = "");

// Drops every annotation, for checking conventional properties of the
// original code.
Ast strip_annotations(const Ast& ast);

// Deterministic C text: 2-space indentation, one statement per line.
std::string emit_c(const Ast& ast);

// Expression text with the minimal parentheses that preserve the tree.
std::string emit_expr(const Expr& e);

}  // namespace timedc
