#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "timedc/ast.hpp"

namespace timedc {

// Position of an annotation inside a function body: indices into nested
// statement lists (blocks, branches and loop bodies count as one level).
struct StatementAnnotation {
  std::string function;
  std::vector<std::size_t> path;
  Annotation annotation;
};

struct AnnotatedProgram {
  Ast ast;
  std::vector<std::string> timers;  // definition order
  // Every defined function; 0 for functions without a WCET annotation.
  std::map<std::string, std::uint64_t> wcet;
  // The WCET-FUNCTION annotation bound to each annotated, not yet
  // instrumented, function.
  std::map<std::string, Annotation> wcet_annotations;
  std::vector<StatementAnnotation> stmt_annotations;  // resets and asserts, source order
  std::map<std::string, std::int64_t> constants;      // const globals with known values
  std::vector<Diagnostic> warnings;
};

// Values of scalar const globals whose initializers fold to integers.
std::map<std::string, std::int64_t> fold_constants(const Ast& ast);

std::optional<std::int64_t> evaluate_constant(const Expr& e,
                                              const std::map<std::string, std::int64_t>& constants);

// All annotations in source order (file scope and statement positions).
std::vector<Annotation> collect_annotations(const Ast& ast);

// Throws FrontendError(Bind) when a WCET-FUNCTION is not followed by a
// function definition, two target the same function, a timer is used before
// its DEFINE-TIMER, or a symbolic constant does not resolve.
AnnotatedProgram bind_annotations(Ast ast, const std::string& file);

}  // namespace timedc
