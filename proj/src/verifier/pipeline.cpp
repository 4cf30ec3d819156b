#include "timedc/pipeline.hpp"

#include "timedc/frontend.hpp"
#include "timedc/instrument.hpp"

namespace timedc {

Compiled compile(const SourceUnit& src, const CompileOptions& options) {
  Compiled out;
  const FrontendOptions fe{options.defines};
  if (options.conventional) {
    out.instrumented = strip_annotations(load_ast(src, fe));
  } else {
    AnnotatedProgram annotated = load_annotated(src, fe);
    out.warnings = annotated.warnings;
    out.instrumented = instrument(annotated, src.path());
  }
  out.program = vm::lower(out.instrumented, src.path(), options.timer_width);
  return out;
}

}  // namespace timedc
