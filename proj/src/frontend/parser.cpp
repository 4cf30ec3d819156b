#include "timedc/parser.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "timedc/annotation.hpp"

namespace timedc {
namespace {

class Parser {
 public:
  Parser(const std::vector<Token>& tokens, const std::string& file) : file_(file) {
    for (const auto& t : tokens) {
      if (t.kind == TokenKind::PlainComment && !is_echo_comment(t.lexeme)) continue;
      tokens_.push_back(t);
    }
    if (tokens_.empty() || tokens_.back().kind != TokenKind::EndOfInput) {
      Token eoi;
      if (!tokens_.empty()) eoi.loc = tokens_.back().loc;
      tokens_.push_back(eoi);
    }
  }

  Ast parse_unit() {
    Ast ast;
    while (true) {
      const Token& t = raw();
      if (t.kind == TokenKind::EndOfInput) break;
      if (t.kind == TokenKind::PlainComment) {
        ast.items.push_back({CommentLine{t.lexeme}, t.loc});
        ++pos_;
        continue;
      }
      if (t.kind == TokenKind::AnnotationComment) {
        ast.items.push_back({parse_annotation(t, file_), t.loc});
        ++pos_;
        continue;
      }
      parse_external_declaration(ast);
    }
    return ast;
  }

  Expr parse_standalone_expression() {
    Expr e = parse_expr();
    if (cur().kind != TokenKind::EndOfInput) fail_expected({"end of expression"});
    return e;
  }

 private:
  // ---- token access ----

  const Token& raw() const { return tokens_[pos_]; }

  // Next significant token; echo comments in non-statement positions are skipped.
  const Token& cur() {
    while (tokens_[pos_].kind == TokenKind::PlainComment) ++pos_;
    return tokens_[pos_];
  }

  const Token& peek_ahead(std::size_t n) {
    cur();
    std::size_t i = pos_;
    while (n > 0 && tokens_[i].kind != TokenKind::EndOfInput) {
      ++i;
      while (tokens_[i].kind == TokenKind::PlainComment) ++i;
      --n;
    }
    return tokens_[i];
  }

  Token take() {
    Token t = cur();
    if (t.kind != TokenKind::EndOfInput) ++pos_;
    return t;
  }

  bool accept_punct(std::string_view p) {
    if (cur().is_punct(p)) {
      ++pos_;
      return true;
    }
    return false;
  }

  Token expect_punct(std::string_view p) {
    if (!cur().is_punct(p)) fail_expected({"'" + std::string(p) + "'"});
    return take();
  }

  Token expect_identifier() {
    if (cur().kind != TokenKind::Identifier) fail_expected({"identifier"});
    return take();
  }

  [[noreturn]] void fail_expected(std::vector<std::string> expected) {
    const Token& t = cur();
    std::string msg = "expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += (i + 1 == expected.size()) ? " or " : ", ";
      msg += expected[i];
    }
    msg += t.kind == TokenKind::EndOfInput ? " before end of input" : " before '" + t.lexeme + "'";
    throw FrontendError(DiagnosticKind::Parse, file_, t.loc, msg);
  }

  [[noreturn]] void fail_at(SourceLocation loc, const std::string& msg) {
    throw FrontendError(DiagnosticKind::Parse, file_, loc, msg);
  }

  // ---- declarations ----

  bool at_type_start() {
    const Token& t = cur();
    return t.is_keyword("int") || t.is_keyword("unsigned") || t.is_keyword("signed") ||
           t.is_keyword("char") || t.is_keyword("void") || t.is_keyword("const") ||
           t.is_keyword("extern") || t.is_keyword("static");
  }

  struct Specifiers {
    TypeSpec type;
    bool is_extern = false;
    SourceLocation loc;
  };

  Specifiers parse_specifiers() {
    Specifiers s;
    s.loc = cur().loc;
    if (cur().is_keyword("static")) fail_at(cur().loc, "'static' is not supported");
    if (cur().is_keyword("extern")) {
      take();
      s.is_extern = true;
    }
    if (cur().is_keyword("const")) {
      take();
      s.type.is_const = true;
    }
    if (cur().is_keyword("unsigned") || cur().is_keyword("signed")) {
      const bool is_unsigned = take().lexeme == "unsigned";
      if (cur().is_keyword("char")) {
        take();
        s.type.scalar = is_unsigned ? ScalarType::UnsignedChar : ScalarType::Char;
      } else {
        if (cur().is_keyword("int")) take();
        s.type.scalar = is_unsigned ? ScalarType::UnsignedInt : ScalarType::Int;
      }
    } else if (cur().is_keyword("int")) {
      take();
      s.type.scalar = ScalarType::Int;
    } else if (cur().is_keyword("char")) {
      take();
      s.type.scalar = ScalarType::Char;
    } else if (cur().is_keyword("void")) {
      take();
      s.type.scalar = ScalarType::Void;
    } else {
      fail_expected({"type name"});
    }
    if (cur().is_keyword("const")) {
      take();
      s.type.is_const = true;
    }
    return s;
  }

  void parse_external_declaration(Ast& ast) {
    Specifiers spec;
    if (cur().kind == TokenKind::Identifier && peek_ahead(1).is_punct("(")) {
      // old-style implicit int: `f() { ... }`
      spec.type.scalar = ScalarType::Int;
      spec.loc = cur().loc;
    } else {
      spec = parse_specifiers();
    }
    if (cur().is_punct("*")) fail_at(cur().loc, "pointer declarations are not supported");
    Token name = expect_identifier();
    if (cur().is_punct("(")) {
      Function fn = parse_function_rest(spec, name);
      ast.items.push_back({std::move(fn), spec.loc});
      return;
    }
    auto decls = parse_declarators_rest(spec, name);
    for (auto& d : decls) {
      const SourceLocation loc = d.loc;
      ast.items.push_back({std::move(d), loc});
    }
  }

  Function parse_function_rest(const Specifiers& spec, const Token& name) {
    Function fn;
    fn.return_type = spec.type;
    fn.name = name.lexeme;
    fn.is_extern = spec.is_extern;
    fn.loc = name.loc;
    expect_punct("(");
    if (cur().is_keyword("void") && peek_ahead(1).is_punct(")")) {
      take();
    } else if (!cur().is_punct(")")) {
      do {
        Param p;
        Specifiers ps = parse_specifiers();
        p.type = ps.type;
        if (accept_punct("*")) p.type.is_pointer = true;
        p.name = expect_identifier().lexeme;
        if (accept_punct("[")) {
          if (cur().kind == TokenKind::IntegerLiteral) take();
          expect_punct("]");
          p.type.is_array_param = true;
        }
        if (p.type.scalar == ScalarType::Void && !p.type.is_pointer && !p.type.is_array_param) {
          fail_at(ps.loc, "parameter '" + p.name + "' has type void");
        }
        fn.params.push_back(std::move(p));
      } while (accept_punct(","));
    }
    expect_punct(")");
    if (accept_punct(";")) return fn;
    if (spec.is_extern) fail_at(name.loc, "extern function '" + fn.name + "' cannot have a body");
    if (!cur().is_punct("{")) fail_expected({"';'", "'{'"});
    fn.body = parse_block();
    return fn;
  }

  std::vector<VarDecl> parse_declarators_rest(const Specifiers& spec, const Token& first) {
    if (spec.type.scalar == ScalarType::Void) fail_at(first.loc, "variable '" + first.lexeme + "' declared void");
    std::vector<VarDecl> out;
    Token name = first;
    while (true) {
      VarDecl d;
      d.type = spec.type;
      d.is_extern = spec.is_extern;
      d.name = name.lexeme;
      d.loc = name.loc;
      if (accept_punct("[")) {
        if (cur().kind != TokenKind::IntegerLiteral) fail_expected({"array size"});
        const Token size_tok = take();
        const std::int64_t size = literal_value(size_tok);
        if (size <= 0 || size > (1 << 20)) fail_at(size_tok.loc, "array size out of range");
        d.type.array_size = static_cast<std::uint32_t>(size);
        expect_punct("]");
      }
      if (accept_punct("=")) {
        if (accept_punct("{")) {
          if (!d.type.array_size) fail_at(d.loc, "brace initializer for non-array '" + d.name + "'");
          std::vector<Expr> list;
          if (!cur().is_punct("}")) {
            do {
              if (cur().is_punct("}")) break;
              list.push_back(parse_expr());
            } while (accept_punct(","));
          }
          expect_punct("}");
          if (list.size() > *d.type.array_size) fail_at(d.loc, "too many initializers for '" + d.name + "'");
          d.init_list = std::move(list);
        } else {
          if (d.type.array_size) fail_at(d.loc, "array '" + d.name + "' needs a brace initializer");
          d.init = parse_expr();
        }
      }
      if (d.type.is_const && !d.init && !d.init_list && !d.is_extern) {
        fail_at(d.loc, "const variable '" + d.name + "' needs an initializer");
      }
      out.push_back(std::move(d));
      if (!accept_punct(",")) break;
      name = expect_identifier();
    }
    expect_punct(";");
    return out;
  }

  // ---- statements ----

  Block parse_block() {
    expect_punct("{");
    Block b;
    while (true) {
      if (raw().kind == TokenKind::EndOfInput) fail_expected({"'}'"});
      if (raw().kind != TokenKind::PlainComment && raw().kind != TokenKind::AnnotationComment &&
          raw().is_punct("}")) {
        break;
      }
      parse_statement_into(b.stmts);
    }
    expect_punct("}");
    return b;
  }

  // A statement position that holds exactly one statement (if/loop bodies).
  Stmt parse_single_statement() {
    const SourceLocation loc = cur().loc;
    std::vector<Stmt> out;
    parse_statement_into(out);
    if (out.empty()) return Stmt{Block{}, loc};
    if (out.size() > 1) {
      if (std::holds_alternative<DeclStmt>(out.front().node)) {
        fail_at(loc, "a declaration is not allowed as a branch or loop body");
      }
      Block b;
      b.stmts = std::move(out);
      return Stmt{std::move(b), loc};
    }
    if (std::holds_alternative<DeclStmt>(out.front().node)) {
      fail_at(loc, "a declaration is not allowed as a branch or loop body");
    }
    return std::move(out.front());
  }

  void parse_statement_into(std::vector<Stmt>& out) {
    const Token& r = raw();
    if (r.kind == TokenKind::PlainComment) {
      out.push_back({CommentLine{r.lexeme}, r.loc});
      ++pos_;
      return;
    }
    if (r.kind == TokenKind::AnnotationComment) {
      out.push_back({AnnotationStmt{parse_annotation(r, file_)}, r.loc});
      ++pos_;
      return;
    }
    const Token& t = cur();
    const SourceLocation loc = t.loc;
    if (t.is_punct("{")) {
      out.push_back({parse_block(), loc});
      return;
    }
    if (t.is_punct(";")) {
      take();
      return;
    }
    if (at_type_start()) {
      Specifiers spec = parse_specifiers();
      if (spec.is_extern) fail_at(loc, "extern declarations must be at file scope");
      if (cur().is_punct("*")) fail_at(cur().loc, "pointer declarations are not supported");
      Token name = expect_identifier();
      for (auto& d : parse_declarators_rest(spec, name)) {
        const SourceLocation dloc = d.loc;
        out.push_back({DeclStmt{std::move(d)}, dloc});
      }
      return;
    }
    if (t.kind == TokenKind::Keyword) {
      if (t.lexeme == "if") return out.push_back(parse_if());
      if (t.lexeme == "while") return out.push_back(parse_while());
      if (t.lexeme == "for") return out.push_back(parse_for());
      if (t.lexeme == "return") {
        take();
        ReturnStmt ret;
        if (!cur().is_punct(";")) ret.value = parse_expr();
        expect_punct(";");
        out.push_back({std::move(ret), loc});
        return;
      }
      if (t.lexeme == "assert" || t.lexeme == kAssumeIntrinsic) {
        const bool is_assert = t.lexeme == "assert";
        take();
        expect_punct("(");
        Expr cond = parse_expr();
        expect_punct(")");
        expect_punct(";");
        if (is_assert) out.push_back({AssertStmt{std::move(cond)}, loc});
        else out.push_back({AssumeStmt{std::move(cond)}, loc});
        return;
      }
      fail_at(loc, "'" + t.lexeme + "' statements are not supported");
    }
    out.push_back(parse_simple_statement());
    expect_punct(";");
  }

  // Assignment or call, without the trailing ';'.
  Stmt parse_simple_statement() {
    const SourceLocation loc = cur().loc;
    if (cur().is_punct("++") || cur().is_punct("--")) {
      const bool inc = take().lexeme == "++";
      LValue target = parse_lvalue();
      return {AssignStmt{std::move(target), inc ? AssignOp::Increment : AssignOp::Decrement, std::nullopt}, loc};
    }
    if (cur().kind != TokenKind::Identifier) fail_expected({"statement"});
    if (peek_ahead(1).is_punct("(")) {
      Expr call = parse_postfix();
      return {CallStmt{std::move(call)}, loc};
    }
    LValue target = parse_lvalue();
    const Token op = cur();
    static const std::map<std::string, AssignOp, std::less<>> kOps = {
        {"=", AssignOp::Set},  {"+=", AssignOp::Add}, {"-=", AssignOp::Sub},       {"*=", AssignOp::Mul},
        {"/=", AssignOp::Div}, {"%=", AssignOp::Mod}, {"++", AssignOp::Increment}, {"--", AssignOp::Decrement},
    };
    auto it = op.kind == TokenKind::Punctuation ? kOps.find(op.lexeme) : kOps.end();
    if (it == kOps.end()) fail_expected({"assignment operator"});
    take();
    AssignStmt a{std::move(target), it->second, std::nullopt};
    if (it->second != AssignOp::Increment && it->second != AssignOp::Decrement) a.value = parse_expr();
    return {std::move(a), loc};
  }

  LValue parse_lvalue() {
    LValue lv;
    lv.name = expect_identifier().lexeme;
    if (accept_punct("[")) {
      lv.index = Box<Expr>(parse_expr());
      expect_punct("]");
    }
    return lv;
  }

  Stmt parse_if() {
    const SourceLocation loc = take().loc;
    expect_punct("(");
    Expr cond = parse_expr();
    expect_punct(")");
    Stmt then_branch = parse_single_statement();
    IfStmt s{std::move(cond), std::move(then_branch), std::nullopt};
    if (cur().is_keyword("else")) {
      take();
      s.else_branch = Box<Stmt>(parse_single_statement());
    }
    return {std::move(s), loc};
  }

  Stmt parse_while() {
    const SourceLocation loc = take().loc;
    expect_punct("(");
    Expr cond = parse_expr();
    expect_punct(")");
    Stmt body = parse_single_statement();
    return {WhileStmt{std::move(cond), std::move(body)}, loc};
  }

  Stmt parse_for() {
    const SourceLocation loc = take().loc;
    expect_punct("(");
    std::optional<Box<Stmt>> init;
    if (!cur().is_punct(";")) {
      if (at_type_start()) {
        const SourceLocation dloc = cur().loc;
        Specifiers spec = parse_specifiers();
        Token name = expect_identifier();
        auto decls = parse_declarators_rest(spec, name);  // consumes ';'
        if (decls.size() != 1) fail_at(dloc, "for-loop initializer must declare one variable");
        init = Box<Stmt>(Stmt{DeclStmt{std::move(decls.front())}, dloc});
      } else {
        init = Box<Stmt>(parse_simple_statement());
        expect_punct(";");
      }
    } else {
      take();
    }
    std::optional<Expr> cond;
    if (!cur().is_punct(";")) cond = parse_expr();
    expect_punct(";");
    std::optional<Box<Stmt>> step;
    if (!cur().is_punct(")")) step = Box<Stmt>(parse_simple_statement());
    expect_punct(")");
    Stmt body = parse_single_statement();
    return {ForStmt{std::move(init), std::move(cond), std::move(step), std::move(body)}, loc};
  }

  // ---- expressions ----

  static int precedence(std::string_view op) {
    if (op == "||") return 1;
    if (op == "&&") return 2;
    if (op == "==" || op == "!=") return 3;
    if (op == "<" || op == "<=" || op == ">" || op == ">=") return 4;
    if (op == "+" || op == "-") return 5;
    if (op == "*" || op == "/" || op == "%") return 6;
    return 0;
  }

  static BinaryOp binary_op(std::string_view op) {
    if (op == "||") return BinaryOp::LogicalOr;
    if (op == "&&") return BinaryOp::LogicalAnd;
    if (op == "==") return BinaryOp::Eq;
    if (op == "!=") return BinaryOp::Ne;
    if (op == "<") return BinaryOp::Lt;
    if (op == "<=") return BinaryOp::Le;
    if (op == ">") return BinaryOp::Gt;
    if (op == ">=") return BinaryOp::Ge;
    if (op == "+") return BinaryOp::Add;
    if (op == "-") return BinaryOp::Sub;
    if (op == "*") return BinaryOp::Mul;
    if (op == "/") return BinaryOp::Div;
    return BinaryOp::Mod;
  }

  Expr parse_expr() { return parse_binary(1); }

  Expr parse_binary(int min_prec) {
    Expr lhs = parse_unary();
    while (true) {
      const Token& t = cur();
      if (t.kind != TokenKind::Punctuation) break;
      const int prec = precedence(t.lexeme);
      if (prec == 0 || prec < min_prec) break;
      const Token op = take();
      Expr rhs = parse_binary(prec + 1);
      lhs = make_binary(binary_op(op.lexeme), std::move(lhs), std::move(rhs), op.loc);
    }
    return lhs;
  }

  Expr parse_unary() {
    const Token& t = cur();
    if (t.is_punct("!") || t.is_punct("-")) {
      const Token op = take();
      Expr operand = parse_unary();
      return Expr{UnaryExpr{op.lexeme == "!" ? UnaryOp::LogicalNot : UnaryOp::Negate, std::move(operand)}, op.loc};
    }
    if (t.is_punct("+")) {
      take();
      return parse_unary();
    }
    return parse_postfix();
  }

  Expr parse_postfix() {
    const Token& t = cur();
    if (t.kind == TokenKind::IntegerLiteral) {
      const Token lit = take();
      try {
        return make_int(literal_value(lit), lit.loc);
      } catch (const FrontendError& e) {
        fail_at(lit.loc, e.diagnostics().front().message);
      }
    }
    if (t.is_punct("(")) {
      take();
      Expr e = parse_expr();
      expect_punct(")");
      return e;
    }
    if (t.kind == TokenKind::Identifier) {
      const Token name = take();
      if (accept_punct("(")) {
        CallExpr call{name.lexeme, {}};
        if (!cur().is_punct(")")) {
          do {
            call.args.push_back(parse_expr());
          } while (accept_punct(","));
        }
        expect_punct(")");
        return Expr{std::move(call), name.loc};
      }
      if (accept_punct("[")) {
        Expr index = parse_expr();
        expect_punct("]");
        return Expr{IndexExpr{name.lexeme, std::move(index)}, name.loc};
      }
      return make_name(name.lexeme, name.loc);
    }
    fail_expected({"expression"});
  }

  const std::string& file_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// ---- whole-program checks ----

void collect_calls_expr(const Expr& e, std::vector<std::pair<std::string, SourceLocation>>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, CallExpr>) {
          out.emplace_back(n.callee, e.loc);
          for (const auto& a : n.args) collect_calls_expr(a, out);
        } else if constexpr (std::is_same_v<T, IndexExpr>) {
          collect_calls_expr(*n.index, out);
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          collect_calls_expr(*n.operand, out);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          collect_calls_expr(*n.lhs, out);
          collect_calls_expr(*n.rhs, out);
        }
      },
      e.node);
}

void collect_calls_stmt(const Stmt& s, std::vector<std::pair<std::string, SourceLocation>>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Block>) {
          for (const auto& c : n.stmts) collect_calls_stmt(c, out);
        } else if constexpr (std::is_same_v<T, DeclStmt>) {
          if (n.decl.init) collect_calls_expr(*n.decl.init, out);
          if (n.decl.init_list) {
            for (const auto& e : *n.decl.init_list) collect_calls_expr(e, out);
          }
        } else if constexpr (std::is_same_v<T, AssignStmt>) {
          if (n.target.index) collect_calls_expr(**n.target.index, out);
          if (n.value) collect_calls_expr(*n.value, out);
        } else if constexpr (std::is_same_v<T, CallStmt>) {
          collect_calls_expr(n.call, out);
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          collect_calls_expr(n.cond, out);
          collect_calls_stmt(*n.then_branch, out);
          if (n.else_branch) collect_calls_stmt(**n.else_branch, out);
        } else if constexpr (std::is_same_v<T, WhileStmt>) {
          collect_calls_expr(n.cond, out);
          collect_calls_stmt(*n.body, out);
        } else if constexpr (std::is_same_v<T, ForStmt>) {
          if (n.init) collect_calls_stmt(**n.init, out);
          if (n.cond) collect_calls_expr(*n.cond, out);
          if (n.step) collect_calls_stmt(**n.step, out);
          collect_calls_stmt(*n.body, out);
        } else if constexpr (std::is_same_v<T, ReturnStmt>) {
          if (n.value) collect_calls_expr(*n.value, out);
        } else if constexpr (std::is_same_v<T, AssertStmt> || std::is_same_v<T, AssumeStmt>) {
          collect_calls_expr(n.cond, out);
        }
      },
      s.node);
}

void check_functions(const Ast& ast, const std::string& file) {
  std::map<std::string, const Function*> definitions;
  std::map<std::string, const Function*> declarations;
  std::set<std::string> global_names;
  for (const auto& item : ast.items) {
    if (const auto* f = std::get_if<Function>(&item.node)) {
      if (f->name == kNondetIntrinsic || f->name == kAssumeIntrinsic || f->name == "assert") {
        throw FrontendError(DiagnosticKind::Parse, file, f->loc, "'" + f->name + "' is a reserved intrinsic name");
      }
      if (f->is_definition()) {
        if (!definitions.emplace(f->name, f).second) {
          throw FrontendError(DiagnosticKind::Parse, file, f->loc, "redefinition of function '" + f->name + "'");
        }
      } else {
        declarations.emplace(f->name, f);
      }
    }
  }
  for (const auto& [name, fn] : definitions) {
    if (auto it = declarations.find(name); it != declarations.end() && it->second->is_extern) {
      throw FrontendError(DiagnosticKind::Parse, file, fn->loc, "function '" + name + "' is declared extern but defined here");
    }
  }
  for (const auto& [name, fn] : definitions) {
    std::vector<std::pair<std::string, SourceLocation>> calls;
    collect_calls_stmt(Stmt{*fn->body, fn->loc}, calls);
    for (const auto& [callee, loc] : calls) {
      if (callee == kNondetIntrinsic || definitions.contains(callee)) continue;
      auto decl = declarations.find(callee);
      if (decl != declarations.end() && decl->second->is_extern) continue;
      if (decl != declarations.end()) {
        throw FrontendError(DiagnosticKind::Parse, file, loc,
                            "function '" + callee + "' is declared but never defined (mark it extern for a stub)");
      }
      throw FrontendError(DiagnosticKind::Parse, file, loc, "call to undeclared function '" + callee + "'");
    }
  }
}

}  // namespace

void check_call_graph(const Ast& ast, const std::string& file) {
  std::map<std::string, std::vector<std::string>> edges;
  std::map<std::string, SourceLocation> where;
  for (const Function* f : ast.functions()) {
    std::vector<std::pair<std::string, SourceLocation>> calls;
    collect_calls_stmt(Stmt{*f->body, f->loc}, calls);
    auto& out = edges[f->name];
    for (const auto& c : calls) out.push_back(c.first);
    where[f->name] = f->loc;
  }
  enum class Mark { None, Active, Done };
  std::map<std::string, Mark> mark;
  std::vector<std::string> stack;
  std::function<void(const std::string&)> visit = [&](const std::string& name) {
    mark[name] = Mark::Active;
    stack.push_back(name);
    for (const auto& callee : edges[name]) {
      if (!edges.contains(callee)) continue;
      if (mark[callee] == Mark::Active) {
        std::string cycle;
        auto it = std::find(stack.begin(), stack.end(), callee);
        for (; it != stack.end(); ++it) cycle += *it + " -> ";
        cycle += callee;
        throw FrontendError(DiagnosticKind::Recursion, file, where[callee],
                            "recursion is not supported: " + cycle);
      }
      if (mark[callee] == Mark::None) visit(callee);
    }
    stack.pop_back();
    mark[name] = Mark::Done;
  };
  for (const auto& [name, _] : edges) {
    if (mark[name] == Mark::None) visit(name);
  }
}

Ast parse(const std::vector<Token>& tokens, const std::string& file) {
  Parser p(tokens, file);
  Ast ast = p.parse_unit();
  check_functions(ast, file);
  check_call_graph(ast, file);
  return ast;
}

Expr parse_expression(const std::vector<Token>& tokens, const std::string& file) {
  return Parser(tokens, file).parse_standalone_expression();
}

}  // namespace timedc
