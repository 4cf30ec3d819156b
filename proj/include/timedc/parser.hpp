#pragma once

#include <string>
#include <vector>

#include "timedc/ast.hpp"
#include "timedc/lexer.hpp"

namespace timedc {

// Builds an Ast from tokens produced with keep_plain_comments = true (plain
// comments that echo a consumed annotation, e.g. "// RESET-TIMER T;", are kept
// as CommentLine nodes; any other plain comment is dropped).
//
// Throws FrontendError with kind Parse, AnnotationSyntax, or Recursion. Checks
// that function names are unique, every called name resolves, and the call
// graph is acyclic.
Ast parse(const std::vector<Token>& tokens, const std::string& file);

// Parses a standalone expression; the token list must end with EndOfInput.
Expr parse_expression(const std::vector<Token>& tokens, const std::string& file);

// Recognizes the shape written by the instrumenter (echo comments followed by
// timer declarations, increments and resets) and rewrites it back into
// TimerIncrement / TimerReset nodes with Ast::timers filled in. Input without
// echo comments is returned unchanged.
void recover_instrumentation(Ast& ast, const std::string& file);

// Call graph acyclicity; throws FrontendError(Recursion) naming the cycle.
void check_call_graph(const Ast& ast, const std::string& file);

}  // namespace timedc
