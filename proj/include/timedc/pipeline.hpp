#pragma once

#include <set>
#include <string>
#include <vector>

#include "timedc/ast.hpp"
#include "timedc/program.hpp"
#include "timedc/source.hpp"

namespace timedc {

struct CompileOptions {
  std::set<std::string> defines;
  unsigned timer_width = 64;
  // Drop the timing annotations and check only the program's own asserts.
  bool conventional = false;
};

struct Compiled {
  Ast instrumented;
  vm::Program program;
  std::vector<Diagnostic> warnings;
};

// Frontend, binding, instrumentation and lowering. Throws FrontendError.
Compiled compile(const SourceUnit& src, const CompileOptions& options = {});

}  // namespace timedc
