#include "timedc/ast_dump.hpp"

#include <sstream>

namespace timedc {
namespace {

void type_sexpr(std::ostream& os, const TypeSpec& t) {
  os << "(type ";
  switch (t.scalar) {
    case ScalarType::Void: os << "void"; break;
    case ScalarType::Int: os << "int"; break;
    case ScalarType::UnsignedInt: os << "uint"; break;
    case ScalarType::Char: os << "char"; break;
    case ScalarType::UnsignedChar: os << "uchar"; break;
  }
  if (t.is_const) os << " const";
  if (t.is_pointer) os << " ptr";
  if (t.is_array_param) os << " []";
  if (t.array_size) os << " [" << *t.array_size << "]";
  os << ')';
}

void expr_sexpr(std::ostream& os, const Expr& e) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IntLiteral>) {
          os << n.value;
        } else if constexpr (std::is_same_v<T, NameRef>) {
          os << n.name;
        } else if constexpr (std::is_same_v<T, IndexExpr>) {
          os << "(index " << n.array << ' ';
          expr_sexpr(os, *n.index);
          os << ')';
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          os << "(call " << n.callee;
          for (const auto& a : n.args) {
            os << ' ';
            expr_sexpr(os, a);
          }
          os << ')';
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          os << '(' << spelling(n.op) << ' ';
          expr_sexpr(os, *n.operand);
          os << ')';
        } else {
          os << '(' << spelling(n.op) << ' ';
          expr_sexpr(os, *n.lhs);
          os << ' ';
          expr_sexpr(os, *n.rhs);
          os << ')';
        }
      },
      e.node);
}

void decl_sexpr(std::ostream& os, const VarDecl& d) {
  os << "(var " << d.name << ' ';
  type_sexpr(os, d.type);
  if (d.is_extern) os << " extern";
  if (d.init) {
    os << " = ";
    expr_sexpr(os, *d.init);
  }
  if (d.init_list) {
    os << " = {";
    for (const auto& e : *d.init_list) {
      os << ' ';
      expr_sexpr(os, e);
    }
    os << " }";
  }
  os << ')';
}

void annotation_sexpr(std::ostream& os, const Annotation& a) {
  os << "(annotation " << to_string(a.kind) << " \"" << a.raw << "\")";
}

void stmt_sexpr(std::ostream& os, const Stmt& s) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Block>) {
          os << "(block";
          for (const auto& c : n.stmts) {
            os << ' ';
            stmt_sexpr(os, c);
          }
          os << ')';
        } else if constexpr (std::is_same_v<T, DeclStmt>) {
          decl_sexpr(os, n.decl);
        } else if constexpr (std::is_same_v<T, AssignStmt>) {
          os << "(" << spelling(n.op) << ' ' << n.target.name;
          if (n.target.index) {
            os << '[';
            expr_sexpr(os, **n.target.index);
            os << ']';
          }
          if (n.value) {
            os << ' ';
            expr_sexpr(os, *n.value);
          }
          os << ')';
        } else if constexpr (std::is_same_v<T, CallStmt>) {
          expr_sexpr(os, n.call);
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          os << "(if ";
          expr_sexpr(os, n.cond);
          os << ' ';
          stmt_sexpr(os, *n.then_branch);
          if (n.else_branch) {
            os << ' ';
            stmt_sexpr(os, **n.else_branch);
          }
          os << ')';
        } else if constexpr (std::is_same_v<T, WhileStmt>) {
          os << "(while ";
          expr_sexpr(os, n.cond);
          os << ' ';
          stmt_sexpr(os, *n.body);
          os << ')';
        } else if constexpr (std::is_same_v<T, ForStmt>) {
          os << "(for ";
          if (n.init) stmt_sexpr(os, **n.init);
          else os << "_";
          os << ' ';
          if (n.cond) expr_sexpr(os, *n.cond);
          else os << "_";
          os << ' ';
          if (n.step) stmt_sexpr(os, **n.step);
          else os << "_";
          os << ' ';
          stmt_sexpr(os, *n.body);
          os << ')';
        } else if constexpr (std::is_same_v<T, ReturnStmt>) {
          os << "(return";
          if (n.value) {
            os << ' ';
            expr_sexpr(os, *n.value);
          }
          os << ')';
        } else if constexpr (std::is_same_v<T, AssertStmt>) {
          os << "(assert ";
          expr_sexpr(os, n.cond);
          os << ')';
        } else if constexpr (std::is_same_v<T, AssumeStmt>) {
          os << "(assume ";
          expr_sexpr(os, n.cond);
          os << ')';
        } else if constexpr (std::is_same_v<T, CommentLine>) {
          os << "(comment \"" << n.text << "\")";
        } else if constexpr (std::is_same_v<T, AnnotationStmt>) {
          annotation_sexpr(os, n.annotation);
        } else if constexpr (std::is_same_v<T, TimerIncrement>) {
          os << "(tick " << n.timer << ' ';
          expr_sexpr(os, n.amount);
          os << ')';
        } else {
          os << "(reset " << n.timer << ')';
        }
      },
      s.node);
}

}  // namespace

std::string to_sexpr(const Expr& e) {
  std::ostringstream os;
  expr_sexpr(os, e);
  return os.str();
}

std::string to_sexpr(const Stmt& s) {
  std::ostringstream os;
  stmt_sexpr(os, s);
  return os.str();
}

std::string to_sexpr(const Ast& ast) {
  std::ostringstream os;
  os << "(unit";
  if (!ast.timers.empty()) {
    os << "\n  (timers";
    for (const auto& t : ast.timers) os << ' ' << t;
    os << ')';
  }
  for (const auto& item : ast.items) {
    os << "\n  ";
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, CommentLine>) {
            os << "(comment \"" << n.text << "\")";
          } else if constexpr (std::is_same_v<T, Annotation>) {
            annotation_sexpr(os, n);
          } else if constexpr (std::is_same_v<T, VarDecl>) {
            decl_sexpr(os, n);
          } else {
            os << "(function " << n.name << ' ';
            type_sexpr(os, n.return_type);
            if (n.is_extern) os << " extern";
            os << " (params";
            for (const auto& p : n.params) {
              os << " (" << p.name << ' ';
              type_sexpr(os, p.type);
              os << ')';
            }
            os << ')';
            if (n.wcet_amount) os << " (wcet " << to_sexpr(*n.wcet_amount) << ')';
            if (n.body) os << ' ' << to_sexpr(Stmt{*n.body, n.loc});
            os << ')';
          }
        },
        item.node);
  }
  os << ')';
  return os.str();
}

}  // namespace timedc
