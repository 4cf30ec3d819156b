#include <sstream>

#include "timedc/instrument.hpp"
#include "timedc/preprocessor.hpp"

namespace timedc {
namespace {

int precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::LogicalOr: return 1;
    case BinaryOp::LogicalAnd: return 2;
    case BinaryOp::Eq:
    case BinaryOp::Ne: return 3;
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge: return 4;
    case BinaryOp::Add:
    case BinaryOp::Sub: return 5;
    case BinaryOp::Mul:
    case BinaryOp::Div:
    case BinaryOp::Mod: return 6;
  }
  return 0;
}

constexpr int kUnary = 7;
constexpr int kPrimary = 8;

int precedence(const Expr& e) {
  if (const auto* b = std::get_if<BinaryExpr>(&e.node)) return precedence(b->op);
  if (std::holds_alternative<UnaryExpr>(e.node)) return kUnary;
  if (const auto* lit = std::get_if<IntLiteral>(&e.node); lit && lit->value < 0) return kUnary;
  return kPrimary;
}

void expr(std::ostream& os, const Expr& e);

void operand(std::ostream& os, const Expr& e, bool parens) {
  if (parens) os << '(';
  expr(os, e);
  if (parens) os << ')';
}

void expr(std::ostream& os, const Expr& e) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IntLiteral>) {
          os << n.value;
        } else if constexpr (std::is_same_v<T, NameRef>) {
          os << n.name;
        } else if constexpr (std::is_same_v<T, IndexExpr>) {
          os << n.array << '[';
          expr(os, *n.index);
          os << ']';
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          os << n.callee << '(';
          for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i) os << ", ";
            expr(os, n.args[i]);
          }
          os << ')';
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          os << spelling(n.op);
          // `- -x` must not print as `--x`
          operand(os, *n.operand, precedence(*n.operand) <= kUnary);
        } else {
          const int p = precedence(n.op);
          operand(os, *n.lhs, precedence(*n.lhs) < p);
          os << ' ' << spelling(n.op) << ' ';
          operand(os, *n.rhs, precedence(*n.rhs) <= p);
        }
      },
      e.node);
}

const char* scalar_name(ScalarType t) {
  switch (t) {
    case ScalarType::Void: return "void";
    case ScalarType::Int: return "int";
    case ScalarType::UnsignedInt: return "unsigned int";
    case ScalarType::Char: return "char";
    case ScalarType::UnsignedChar: return "unsigned char";
  }
  return "int";
}

std::string type_prefix(const TypeSpec& t) {
  std::string s = t.is_const ? "const " : "";
  return s + scalar_name(t.scalar);
}

std::string decl_text(const VarDecl& d) {
  std::ostringstream os;
  if (d.is_extern) os << "extern ";
  os << type_prefix(d.type) << ' ' << d.name;
  if (d.type.array_size) os << '[' << *d.type.array_size << ']';
  if (d.init) {
    os << " = ";
    expr(os, *d.init);
  } else if (d.init_list) {
    os << " = {";
    for (std::size_t i = 0; i < d.init_list->size(); ++i) {
      os << (i ? ", " : "");
      expr(os, (*d.init_list)[i]);
    }
    os << '}';
  }
  return os.str();
}

std::string assign_text(const AssignStmt& a) {
  std::ostringstream os;
  os << a.target.name;
  if (a.target.index) {
    os << '[';
    expr(os, **a.target.index);
    os << ']';
  }
  if (a.op == AssignOp::Increment || a.op == AssignOp::Decrement) {
    os << spelling(a.op);
  } else {
    os << ' ' << spelling(a.op) << ' ';
    expr(os, *a.value);
  }
  return os.str();
}

// Text of a for-loop clause (no trailing semicolon).
std::string clause_text(const Stmt& s) {
  if (const auto* d = std::get_if<DeclStmt>(&s.node)) return decl_text(d->decl);
  if (const auto* a = std::get_if<AssignStmt>(&s.node)) return assign_text(*a);
  if (const auto* c = std::get_if<CallStmt>(&s.node)) {
    std::ostringstream os;
    expr(os, c->call);
    return os.str();
  }
  return "";
}

class Emitter {
 public:
  std::string run(const Ast& ast) {
    scan(ast);
    if (has_assert_) os_ << "#include <assert.h>\n";
    if (has_nondet_) {
      os_ << "#ifndef " << kToolFlag << "\n"
          << "extern int __VERIFIER_nondet_int(void);\n"
          << "extern void __VERIFIER_assume(int cond);\n"
          << "static int nondet_int(int lo, int hi) {\n"
          << "  int v = __VERIFIER_nondet_int();\n"
          << "  __VERIFIER_assume(lo <= v && v <= hi);\n"
          << "  return v;\n"
          << "}\n"
          << "#endif\n";
    }
    if ((has_assert_ || has_nondet_) && !ast.items.empty()) os_ << '\n';
    for (std::size_t i = 0; i < ast.items.size(); ++i) {
      const auto& item = ast.items[i];
      std::visit(
          [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, CommentLine>) {
              os_ << n.text << '\n';
            } else if constexpr (std::is_same_v<T, Annotation>) {
              os_ << "//@ " << n.raw << '\n';
            } else if constexpr (std::is_same_v<T, VarDecl>) {
              os_ << decl_text(n) << ";\n";
            } else {
              function(n);
              if (n.body && i + 1 < ast.items.size()) os_ << '\n';
            }
          },
          item.node);
    }
    return os_.str();
  }

 private:
  void scan(const Ast& ast) {
    for (const Function* fn : ast.functions()) scan(Stmt{*fn->body, fn->loc});
    for (const VarDecl* d : ast.globals()) {
      if (d->init) scan(*d->init);
    }
  }

  void scan(const Expr& e) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, CallExpr>) {
            if (n.callee == kNondetIntrinsic) has_nondet_ = true;
            for (const auto& a : n.args) scan(a);
          } else if constexpr (std::is_same_v<T, IndexExpr>) {
            scan(*n.index);
          } else if constexpr (std::is_same_v<T, UnaryExpr>) {
            scan(*n.operand);
          } else if constexpr (std::is_same_v<T, BinaryExpr>) {
            scan(*n.lhs);
            scan(*n.rhs);
          }
        },
        e.node);
  }

  void scan(const Stmt& s) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Block>) {
            for (const auto& c : n.stmts) scan(c);
          } else if constexpr (std::is_same_v<T, DeclStmt>) {
            if (n.decl.init) scan(*n.decl.init);
          } else if constexpr (std::is_same_v<T, AssignStmt>) {
            if (n.value) scan(*n.value);
            if (n.target.index) scan(**n.target.index);
          } else if constexpr (std::is_same_v<T, CallStmt>) {
            scan(n.call);
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            scan(n.cond);
            scan(*n.then_branch);
            if (n.else_branch) scan(**n.else_branch);
          } else if constexpr (std::is_same_v<T, WhileStmt>) {
            scan(n.cond);
            scan(*n.body);
          } else if constexpr (std::is_same_v<T, ForStmt>) {
            if (n.init) scan(**n.init);
            if (n.cond) scan(*n.cond);
            if (n.step) scan(**n.step);
            scan(*n.body);
          } else if constexpr (std::is_same_v<T, ReturnStmt>) {
            if (n.value) scan(*n.value);
          } else if constexpr (std::is_same_v<T, AssertStmt>) {
            has_assert_ = true;
            scan(n.cond);
          } else if constexpr (std::is_same_v<T, AssumeStmt>) {
            has_nondet_ = true;
            scan(n.cond);
          }
        },
        s.node);
  }

  void function(const Function& fn) {
    if (fn.is_extern) os_ << "extern ";
    os_ << type_prefix(fn.return_type) << ' ' << fn.name << '(';
    if (fn.params.empty()) os_ << "void";
    for (std::size_t i = 0; i < fn.params.size(); ++i) {
      const Param& p = fn.params[i];
      os_ << (i ? ", " : "") << type_prefix(p.type) << ' ' << (p.type.is_pointer ? "*" : "") << p.name
          << (p.type.is_array_param ? "[]" : "");
    }
    os_ << ')';
    if (!fn.body) {
      os_ << ";\n";
      return;
    }
    os_ << " {\n";
    for (const auto& s : fn.body->stmts) stmt(s, 1);
    os_ << "}\n";
  }

  void indent(int depth) {
    for (int i = 0; i < depth; ++i) os_ << "  ";
  }

  // Emits `header` followed by a branch/loop body; returns true when the body
  // was a block (so a following `else` goes on the closing-brace line).
  bool body(const std::string& header, const Stmt& s, int depth) {
    os_ << header;
    if (const auto* b = std::get_if<Block>(&s.node)) {
      os_ << " {\n";
      for (const auto& c : b->stmts) stmt(c, depth + 1);
      indent(depth);
      os_ << '}';
      return true;
    }
    os_ << '\n';
    stmt(s, depth + 1);
    return false;
  }

  void if_chain(const IfStmt& n, int depth) {
    std::ostringstream h;
    h << "if (";
    expr(h, n.cond);
    h << ')';
    // an unbraced inner `if` would capture our `else`
    const bool wrap = n.else_branch && std::holds_alternative<IfStmt>(n.then_branch->node);
    const bool braced =
        wrap ? body(h.str(), Stmt{Block{{*n.then_branch}}, n.then_branch->loc}, depth) : body(h.str(), *n.then_branch, depth);
    if (!n.else_branch) {
      if (braced) os_ << '\n';
      return;
    }
    if (braced) {
      os_ << " else ";
    } else {
      indent(depth);
      os_ << "else ";
    }
    const Stmt& e = **n.else_branch;
    if (const auto* nested = std::get_if<IfStmt>(&e.node)) {
      if_chain(*nested, depth);
      return;
    }
    if (body("", e, depth)) os_ << '\n';
  }

  void stmt(const Stmt& s, int depth) {
    indent(depth);
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Block>) {
            os_ << "{\n";
            for (const auto& c : n.stmts) stmt(c, depth + 1);
            indent(depth);
            os_ << "}\n";
          } else if constexpr (std::is_same_v<T, DeclStmt>) {
            os_ << decl_text(n.decl) << ";\n";
          } else if constexpr (std::is_same_v<T, AssignStmt>) {
            os_ << assign_text(n) << ";\n";
          } else if constexpr (std::is_same_v<T, CallStmt>) {
            expr(os_, n.call);
            os_ << ";\n";
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            if_chain(n, depth);
          } else if constexpr (std::is_same_v<T, WhileStmt>) {
            std::ostringstream h;
            h << "while (";
            expr(h, n.cond);
            h << ')';
            if (body(h.str(), *n.body, depth)) os_ << '\n';
          } else if constexpr (std::is_same_v<T, ForStmt>) {
            std::ostringstream h;
            h << "for (" << (n.init ? clause_text(**n.init) : "") << ';';
            if (n.cond) {
              h << ' ';
              expr(h, *n.cond);
            }
            h << ';';
            if (n.step) h << ' ' << clause_text(**n.step);
            h << ')';
            if (body(h.str(), *n.body, depth)) os_ << '\n';
          } else if constexpr (std::is_same_v<T, ReturnStmt>) {
            os_ << "return";
            if (n.value) {
              os_ << ' ';
              expr(os_, *n.value);
            }
            os_ << ";\n";
          } else if constexpr (std::is_same_v<T, AssertStmt>) {
            os_ << "assert (";
            expr(os_, n.cond);
            os_ << ");\n";
          } else if constexpr (std::is_same_v<T, AssumeStmt>) {
            os_ << kAssumeIntrinsic << '(';
            expr(os_, n.cond);
            os_ << ");\n";
          } else if constexpr (std::is_same_v<T, CommentLine>) {
            os_ << n.text << '\n';
          } else if constexpr (std::is_same_v<T, AnnotationStmt>) {
            os_ << "//@ " << n.annotation.raw << '\n';
          } else if constexpr (std::is_same_v<T, TimerIncrement>) {
            os_ << n.timer << " += ";
            expr(os_, n.amount);
            os_ << ";\n";
          } else {
            os_ << n.timer << " = 0;\n";
          }
        },
        s.node);
  }

  std::ostringstream os_;
  bool has_assert_ = false;
  bool has_nondet_ = false;
};

}  // namespace

std::string emit_expr(const Expr& e) {
  std::ostringstream os;
  expr(os, e);
  return os.str();
}

std::string emit_c(const Ast& ast) { return Emitter().run(ast); }

}  // namespace timedc
