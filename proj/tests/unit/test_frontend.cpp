#include <gtest/gtest.h>

#include "timedc/annotation.hpp"
#include "timedc/ast_dump.hpp"
#include "timedc/binder.hpp"
#include "timedc/frontend.hpp"
#include "timedc/instrument.hpp"
#include "timedc/lexer.hpp"
#include "timedc/parser.hpp"
#include "timedc/preprocessor.hpp"

using namespace timedc;

namespace {

SourceUnit unit(const std::string& text) { return SourceUnit("t.c", text); }

DiagnosticKind error_kind(const std::string& text) {
  try {
    load_annotated(unit(text));
  } catch (const FrontendError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "accepted:\n" << text;
  return DiagnosticKind::Io;
}

Token annotation_token(const std::string& text) {
  auto toks = tokenize(unit(text));
  return toks.front();
}

}  // namespace

TEST(SourceUnit, LineIndexCoversEveryLine) {
  SourceUnit s("a.c", "int x;\n\nint y;");
  ASSERT_EQ(s.line_count(), 3u);
  EXPECT_EQ(s.line_index()[0], 0u);
  EXPECT_EQ(s.line_index()[1], 7u);
  EXPECT_EQ(s.line_index()[2], 8u);
  EXPECT_EQ(s.line_text(3), "int y;");
  EXPECT_EQ(s.location_of(9).line, 3u);
  EXPECT_EQ(s.location_of(9).column, 2u);
}

TEST(Lexer, AnnotationIsOneToken) {
  auto toks = tokenize(unit("//@ DEFINE-TIMER TIMER1;"));
  ASSERT_EQ(toks.size(), 2u);
  EXPECT_EQ(toks[0].kind, TokenKind::AnnotationComment);
  EXPECT_EQ(toks[0].lexeme, "//@ DEFINE-TIMER TIMER1;");
  EXPECT_EQ(toks[1].kind, TokenKind::EndOfInput);
}

TEST(Lexer, EmptyInput) {
  auto toks = tokenize(unit(""));
  ASSERT_EQ(toks.size(), 1u);
  EXPECT_EQ(toks[0].kind, TokenKind::EndOfInput);
}

TEST(Lexer, Declaration) {
  auto toks = tokenize(unit("int x = 5;"));
  ASSERT_EQ(toks.size(), 6u);
  EXPECT_TRUE(toks[0].is_keyword("int"));
  EXPECT_EQ(toks[1].kind, TokenKind::Identifier);
  EXPECT_TRUE(toks[2].is_punct("="));
  EXPECT_EQ(toks[3].kind, TokenKind::IntegerLiteral);
  EXPECT_TRUE(toks[4].is_punct(";"));
  EXPECT_EQ(toks[5].kind, TokenKind::EndOfInput);
}

TEST(Lexer, LexemesAndWhitespaceRebuildSource) {
  const std::string text = "int  f(void) {\n  x += 0x1F; // note\n  /* block */ return 'a';\n}\n";
  auto toks = tokenize(unit(text), LexOptions{true});
  std::string rebuilt;
  std::size_t at = 0;
  for (const auto& t : toks) {
    if (t.kind == TokenKind::EndOfInput) break;
    ASSERT_GE(t.offset, at);
    const std::string gap = text.substr(at, t.offset - at);
    rebuilt += gap;
    rebuilt += t.lexeme;
    EXPECT_EQ(text.substr(t.offset, t.lexeme.size()), t.lexeme);
    at = t.offset + t.lexeme.size();
  }
  rebuilt += text.substr(at);
  EXPECT_EQ(rebuilt, text);
}

TEST(Lexer, PlainCommentsFollowFlag) {
  EXPECT_EQ(tokenize(unit("// hi\nx")).size(), 2u);
  EXPECT_EQ(tokenize(unit("// hi\nx"), LexOptions{true}).size(), 3u);
}

TEST(Lexer, Errors) {
  EXPECT_THROW(tokenize(unit("int x; /* open")), FrontendError);
  EXPECT_THROW(tokenize(unit("int x = $;")), FrontendError);
  try {
    tokenize(unit("int\n  @"));
  } catch (const FrontendError& e) {
    EXPECT_EQ(e.kind(), DiagnosticKind::Lex);
    EXPECT_EQ(e.diagnostics()[0].loc.line, 2u);
    EXPECT_EQ(e.diagnostics()[0].loc.column, 3u);
    EXPECT_EQ(e.diagnostics()[0].format().rfind("t.c:2:3: error:", 0), 0u);
  }
}

TEST(Lexer, LiteralValues) {
  auto toks = tokenize(unit("10 0x1f 017 'A' '\\n'"));
  EXPECT_EQ(literal_value(toks[0]), 10);
  EXPECT_EQ(literal_value(toks[1]), 31);
  EXPECT_EQ(literal_value(toks[2]), 15);
  EXPECT_EQ(literal_value(toks[3]), 65);
  EXPECT_EQ(literal_value(toks[4]), 10);
}

TEST(Annotation, WcetFunction) {
  const Annotation a = parse_annotation(annotation_token("//@ WCET-FUNCTION [5000]"), "t.c");
  EXPECT_EQ(a.kind, AnnotationKind::WcetFunction);
  ASSERT_TRUE(a.expr.has_value());
  EXPECT_EQ(to_sexpr(*a.expr), "5000");
}

TEST(Annotation, KeywordsAreCaseInsensitive) {
  const Annotation a = parse_annotation(annotation_token("//@ WCET-function [d1]"), "t.c");
  EXPECT_EQ(a.kind, AnnotationKind::WcetFunction);
  EXPECT_EQ(parse_annotation(annotation_token("//@ define-timer T"), "t.c").kind, AnnotationKind::DefineTimer);
}

TEST(Annotation, AssertTimer) {
  const Annotation a = parse_annotation(annotation_token("//@ ASSERT-TIMER (TIMER1 <= alpha)"), "t.c");
  EXPECT_EQ(a.kind, AnnotationKind::AssertTimer);
  EXPECT_EQ(emit_expr(*a.expr), "TIMER1 <= alpha");
}

TEST(Annotation, ResetToleratesAssignmentSuffix) {
  const Annotation a = parse_annotation(annotation_token("//@ RESET-TIMER TIMER2=0;"), "t.c");
  EXPECT_EQ(a.kind, AnnotationKind::ResetTimer);
  EXPECT_EQ(a.timer, "TIMER2");
  EXPECT_EQ(a.raw, "RESET-TIMER TIMER2=0;");
}

TEST(Annotation, SyntaxErrors) {
  for (const char* bad : {"//@ WCET-FUNCTION [-1]", "//@ START-TIMER T;", "//@ ASSERT-TIMER (T <",
                          "//@ ASSERT-TIMER (T / 2 < 3)", "//@ DEFINE-TIMER 3x;", "//@ WCET-FUNCTION 5"}) {
    try {
      parse_annotation(annotation_token(bad), "t.c");
      ADD_FAILURE() << bad;
    } catch (const FrontendError& e) {
      EXPECT_EQ(e.kind(), DiagnosticKind::AnnotationSyntax) << bad;
    }
  }
}

TEST(Annotation, EveryMarkerYieldsOneAnnotationOrOneDiagnostic) {
  const std::string text =
      "//@ DEFINE-TIMER A;\n//@ DEFINE-TIMER B;\n//@ WCET-FUNCTION [3]\nvoid f(void) {}\n"
      "int main(void) {\n  //@ RESET-TIMER A;\n  f();\n  //@ ASSERT-TIMER (A <= 3 && B >= 0);\n  return 0;\n}\n";
  const Ast ast = load_ast(unit(text));
  EXPECT_EQ(collect_annotations(ast).size(), 5u);
}

TEST(Parser, SkeletonWithEmptyBodies) {
  const std::string text =
      "//@ DEFINE-TIMER TIMER1;\n//@ DEFINE-TIMER TIMER2;\n"
      "//@ WCET-function [1]\nvoid f1(void) {}\n//@ WCET-function [2]\nvoid f2(void) {}\n"
      "//@ WCET-function [3]\nvoid f3(void) {}\n//@ WCET-function [4]\nvoid f4(void) {}\n"
      "//@ WCET-function [5]\nvoid f5(void) {}\n"
      "int main(int argc, char *argv[]) { f1(); f2(); f3(); f4(); f5(); return 0; }\n";
  const Ast ast = load_ast(unit(text));
  std::vector<std::string> names;
  for (const auto* f : ast.functions()) names.push_back(f->name);
  EXPECT_EQ(names, (std::vector<std::string>{"f1", "f2", "f3", "f4", "f5", "main"}));
}

TEST(Parser, RecursionIsRejected) {
  EXPECT_EQ(error_kind("void f(void) { f(); }\nint main(void) { f(); return 0; }"), DiagnosticKind::Recursion);
  EXPECT_EQ(error_kind("void g(void);\nvoid f(void) { g(); }\nvoid g(void) { f(); }\nint main(void) { return 0; }"),
            DiagnosticKind::Recursion);
}

TEST(Parser, AssertStatement) {
  const Ast ast = load_ast(unit("void g(void) { assert(1); }"));
  ASSERT_EQ(ast.functions().size(), 1u);
  EXPECT_NE(to_sexpr(ast).find("assert"), std::string::npos);
}

TEST(Parser, ErrorsCarryLocation) {
  try {
    load_ast(unit("int main(void) {\n  x = ;\n}"));
    FAIL();
  } catch (const FrontendError& e) {
    EXPECT_EQ(e.kind(), DiagnosticKind::Parse);
    EXPECT_EQ(e.diagnostics()[0].loc.line, 2u);
  }
  EXPECT_EQ(error_kind("int main(void) { undefined_fn(); return 0; }"), DiagnosticKind::Parse);
  EXPECT_EQ(error_kind("int f(void) { return 0; }\nint f(void) { return 1; }"), DiagnosticKind::Parse);
}

TEST(Parser, Deterministic) {
  const std::string text = "int a[4];\nint main(void) { int i; for (i = 0; i < 4; i++) { a[i] = i * 2; } return a[3]; }";
  EXPECT_EQ(to_sexpr(load_ast(unit(text))), to_sexpr(load_ast(unit(text))));
}

TEST(Parser, EmitThenParseIsStructurallyEqual) {
  const std::string text =
      "extern void out(int v);\nconst int K = 3;\nint g[3] = {1, 2, 3};\nunsigned char c;\n"
      "int h(int a, unsigned int b) {\n  if (a < b && !(a == 2) || b - a * 2 >= -1) return a % 3;\n"
      "  else if (a) { a = a / 2; }\n  while (a > 0) a--;\n  return -(a + 1);\n}\n"
      "int main(void) {\n  int i;\n  int s = 0;\n  for (i = 0; i < K; i++) s += g[i] - (1 - i);\n"
      "  out(h(s, 2));\n  assert(s != 7);\n  return 0;\n}\n";
  const Ast a = load_ast(unit(text));
  const Ast b = load_ast(unit(emit_c(a)));
  EXPECT_EQ(to_sexpr(a), to_sexpr(b));
}

TEST(Preprocessor, ConditionalBlocksKeepLineNumbers) {
  const std::string text = "#include <stdio.h>\n#if HARDWARE\nint hw;\n#else\nint sim;\n#endif\nint z;\n";
  const SourceUnit off = preprocess(unit(text), {});
  EXPECT_EQ(off.line_count(), unit(text).line_count());
  EXPECT_EQ(off.line_text(3), "");
  EXPECT_EQ(off.line_text(5), "int sim;");
  const SourceUnit on = preprocess(unit(text), {"HARDWARE"});
  EXPECT_EQ(on.line_text(3), "int hw;");
  EXPECT_EQ(on.line_text(5), "");
}

TEST(Preprocessor, ToolFlagAlwaysDefined) {
  const SourceUnit s = preprocess(unit("#ifndef __TIMEDC__\nint a;\n#endif\n"), {});
  EXPECT_EQ(s.line_text(2), "");
}

TEST(Preprocessor, Errors) {
  EXPECT_EQ(error_kind("#define X 1\nint main(void) { return 0; }"), DiagnosticKind::Preprocess);
  EXPECT_EQ(error_kind("#if A\nint x;\n"), DiagnosticKind::Preprocess);
  EXPECT_EQ(error_kind("#endif\n"), DiagnosticKind::Preprocess);
}

TEST(Binder, SkeletonBindings) {
  const AnnotatedProgram p = load_annotated_file(TIMEDC_FIXTURES "/skeleton.c");
  EXPECT_EQ(p.timers, (std::vector<std::string>{"TIMER1", "TIMER2"}));
  for (int i = 1; i <= 5; ++i) EXPECT_EQ(p.wcet.at("f" + std::to_string(i)), static_cast<std::uint64_t>(i));
  int resets = 0;
  int asserts = 0;
  for (const auto& s : p.stmt_annotations) {
    EXPECT_EQ(s.function, "main");
    resets += s.annotation.kind == AnnotationKind::ResetTimer;
    asserts += s.annotation.kind == AnnotationKind::AssertTimer;
  }
  EXPECT_EQ(resets, 3);
  EXPECT_EQ(asserts, 3);
}

TEST(Binder, NoAnnotations) {
  const AnnotatedProgram p = load_annotated(unit("int f(void) { return 1; }\nint main(void) { return f(); }"));
  EXPECT_TRUE(p.timers.empty());
  EXPECT_TRUE(p.stmt_annotations.empty());
  for (const auto& [name, d] : p.wcet) EXPECT_EQ(d, 0u) << name;
  ASSERT_EQ(p.warnings.size(), 1u);  // f has no WCET; main is exempt
  EXPECT_EQ(p.warnings[0].severity, Severity::Warning);
}

TEST(Binder, Errors) {
  EXPECT_EQ(error_kind("int main(void) { return 0; }\n//@ WCET-FUNCTION [7]\n"), DiagnosticKind::Bind);
  EXPECT_EQ(error_kind("//@ WCET-FUNCTION [7]\n//@ WCET-FUNCTION [8]\nvoid f(void) {}"), DiagnosticKind::Bind);
  EXPECT_EQ(error_kind("int main(void) {\n  //@ RESET-TIMER T;\n  return 0;\n}\n//@ DEFINE-TIMER T;"),
            DiagnosticKind::Bind);
  EXPECT_EQ(error_kind("//@ DEFINE-TIMER T;\nint main(void) {\n  //@ ASSERT-TIMER (T < unknownK);\n  return 0;\n}"),
            DiagnosticKind::Bind);
  EXPECT_EQ(error_kind("//@ DEFINE-TIMER T;\n//@ DEFINE-TIMER T;\nint main(void) { return 0; }"), DiagnosticKind::Bind);
  EXPECT_EQ(error_kind("int n;\n//@ WCET-FUNCTION [n]\nvoid f(void) {}"), DiagnosticKind::Bind);
  EXPECT_EQ(error_kind("//@ DEFINE-TIMER T;\n//@ RESET-TIMER T;\nint main(void) { return 0; }"), DiagnosticKind::Bind);
}

TEST(Binder, SymbolicConstantsResolve) {
  const AnnotatedProgram p = load_annotated(
      unit("const int base = 40;\nconst int d = base * 2 + 1;\n//@ WCET-FUNCTION [d]\nvoid f(void) {}\n"
           "int main(void) { f(); return 0; }"));
  EXPECT_EQ(p.wcet.at("f"), 81u);
  EXPECT_EQ(p.constants.at("d"), 81);
}

TEST(Binder, ResetOutsideMainIsAnExtension) {
  const AnnotatedProgram p = load_annotated(
      unit("//@ DEFINE-TIMER T;\n//@ WCET-FUNCTION [1]\nvoid f(void) {\n  //@ RESET-TIMER T;\n}\n"
           "int main(void) { f(); return 0; }"));
  ASSERT_EQ(p.stmt_annotations.size(), 1u);
  EXPECT_EQ(p.stmt_annotations[0].function, "f");
  bool flagged = false;
  for (const auto& w : p.warnings) flagged |= w.message.find("extension") != std::string::npos;
  EXPECT_TRUE(flagged);
}
