#pragma once

#include <set>
#include <string>

#include "timedc/binder.hpp"
#include "timedc/source.hpp"

namespace timedc {

struct FrontendOptions {
  std::set<std::string> defines;
};

// preprocess -> tokenize -> parse -> recover instrumentation. The result has
// already passed the call-graph and name-resolution checks.
Ast load_ast(const SourceUnit& src, const FrontendOptions& options = {});

// load_ast followed by bind_annotations.
AnnotatedProgram load_annotated(const SourceUnit& src, const FrontendOptions& options = {});
AnnotatedProgram load_annotated_file(const std::string& path, const FrontendOptions& options = {});

}  // namespace timedc
