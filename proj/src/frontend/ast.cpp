#include "timedc/ast.hpp"

namespace timedc {

const char* spelling(UnaryOp op) {
  switch (op) {
    case UnaryOp::Negate: return "-";
    case UnaryOp::LogicalNot: return "!";
  }
  return "?";
}

const char* spelling(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::LogicalAnd: return "&&";
    case BinaryOp::LogicalOr: return "||";
  }
  return "?";
}

const char* spelling(AssignOp op) {
  switch (op) {
    case AssignOp::Set: return "=";
    case AssignOp::Add: return "+=";
    case AssignOp::Sub: return "-=";
    case AssignOp::Mul: return "*=";
    case AssignOp::Div: return "/=";
    case AssignOp::Mod: return "%=";
    case AssignOp::Increment: return "++";
    case AssignOp::Decrement: return "--";
  }
  return "?";
}

const char* to_string(AnnotationKind kind) {
  switch (kind) {
    case AnnotationKind::DefineTimer: return "DEFINE-TIMER";
    case AnnotationKind::ResetTimer: return "RESET-TIMER";
    case AnnotationKind::AssertTimer: return "ASSERT-TIMER";
    case AnnotationKind::WcetFunction: return "WCET-FUNCTION";
  }
  return "?";
}

Expr make_int(std::int64_t value, SourceLocation loc) { return Expr{IntLiteral{value}, loc}; }

Expr make_name(std::string name, SourceLocation loc) { return Expr{NameRef{std::move(name)}, loc}; }

Expr make_binary(BinaryOp op, Expr lhs, Expr rhs, SourceLocation loc) {
  return Expr{BinaryExpr{op, std::move(lhs), std::move(rhs)}, loc};
}

const Function* Ast::find_function(std::string_view name) const {
  const Function* found = nullptr;
  for (const auto& item : items) {
    if (const auto* f = std::get_if<Function>(&item.node); f && f->name == name) {
      if (f->is_definition()) return f;
      if (!found) found = f;
    }
  }
  return found;
}

std::vector<const Function*> Ast::functions() const {
  std::vector<const Function*> out;
  for (const auto& item : items) {
    if (const auto* f = std::get_if<Function>(&item.node); f && f->is_definition()) out.push_back(f);
  }
  return out;
}

std::vector<const VarDecl*> Ast::globals() const {
  std::vector<const VarDecl*> out;
  for (const auto& item : items) {
    if (const auto* v = std::get_if<VarDecl>(&item.node)) out.push_back(v);
  }
  return out;
}

}  // namespace timedc
