#include "timedc/frontend.hpp"

#include "timedc/lexer.hpp"
#include "timedc/parser.hpp"
#include "timedc/preprocessor.hpp"

namespace timedc {

Ast load_ast(const SourceUnit& src, const FrontendOptions& options) {
  const SourceUnit pre = preprocess(src, options.defines);
  auto tokens = tokenize(pre, LexOptions{.keep_plain_comments = true});
  Ast ast = parse(tokens, src.path());
  recover_instrumentation(ast, src.path());
  return ast;
}

AnnotatedProgram load_annotated(const SourceUnit& src, const FrontendOptions& options) {
  return bind_annotations(load_ast(src, options), src.path());
}

AnnotatedProgram load_annotated_file(const std::string& path, const FrontendOptions& options) {
  return load_annotated(read_source_file(path), options);
}

}  // namespace timedc
