#include <algorithm>
#include <set>

#include "timedc/instrument.hpp"

namespace timedc {
namespace {

void names_in(const Expr& e, std::set<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, NameRef>) {
          out.insert(n.name);
        } else if constexpr (std::is_same_v<T, IndexExpr>) {
          out.insert(n.array);
          names_in(*n.index, out);
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          out.insert(n.callee);
          for (const auto& a : n.args) names_in(a, out);
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          names_in(*n.operand, out);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          names_in(*n.lhs, out);
          names_in(*n.rhs, out);
        }
      },
      e.node);
}

void names_in(const Stmt& s, std::set<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Block>) {
          for (const auto& c : n.stmts) names_in(c, out);
        } else if constexpr (std::is_same_v<T, DeclStmt>) {
          out.insert(n.decl.name);
          if (n.decl.init) names_in(*n.decl.init, out);
          if (n.decl.init_list) {
            for (const auto& e : *n.decl.init_list) names_in(e, out);
          }
        } else if constexpr (std::is_same_v<T, AssignStmt>) {
          out.insert(n.target.name);
          if (n.target.index) names_in(**n.target.index, out);
          if (n.value) names_in(*n.value, out);
        } else if constexpr (std::is_same_v<T, CallStmt>) {
          names_in(n.call, out);
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          names_in(n.cond, out);
          names_in(*n.then_branch, out);
          if (n.else_branch) names_in(**n.else_branch, out);
        } else if constexpr (std::is_same_v<T, WhileStmt>) {
          names_in(n.cond, out);
          names_in(*n.body, out);
        } else if constexpr (std::is_same_v<T, ForStmt>) {
          if (n.init) names_in(**n.init, out);
          if (n.cond) names_in(*n.cond, out);
          if (n.step) names_in(**n.step, out);
          names_in(*n.body, out);
        } else if constexpr (std::is_same_v<T, ReturnStmt>) {
          if (n.value) names_in(*n.value, out);
        } else if constexpr (std::is_same_v<T, AssertStmt> || std::is_same_v<T, AssumeStmt>) {
          names_in(n.cond, out);
        }
      },
      s.node);
}

// Identifiers the original program declares or uses, excluding annotations.
std::set<std::string> program_identifiers(const Ast& ast) {
  std::set<std::string> out;
  for (const auto& item : ast.items) {
    if (const auto* d = std::get_if<VarDecl>(&item.node)) {
      out.insert(d->name);
    } else if (const auto* fn = std::get_if<Function>(&item.node)) {
      out.insert(fn->name);
      for (const auto& p : fn->params) out.insert(p.name);
      if (fn->body) names_in(Stmt{*fn->body, fn->loc}, out);
    }
  }
  return out;
}

Stmt echo(const Annotation& a) { return Stmt{CommentLine{"// " + a.raw}, a.loc}; }

class Instrumenter {
 public:
  Instrumenter(const AnnotatedProgram& p, const std::string& file) : p_(p), file_(file) {}

  Ast run() {
    check_names();
    Ast out;
    out.timers = p_.timers;
    for (const auto& item : p_.ast.items) {
      if (const auto* a = std::get_if<Annotation>(&item.node)) {
        out.items.push_back({CommentLine{"// " + a->raw}, a->loc});
        if (a->kind == AnnotationKind::DefineTimer) {
          VarDecl d;
          d.type.scalar = ScalarType::UnsignedInt;
          d.name = a->timer;
          d.loc = a->loc;
          out.items.push_back({std::move(d), a->loc});
        }
        continue;
      }
      if (const auto* fn = std::get_if<Function>(&item.node); fn && fn->body) {
        Function copy = *fn;
        rewrite_block(*copy.body);
        if (auto it = p_.wcet_annotations.find(fn->name); it != p_.wcet_annotations.end()) {
          std::vector<Stmt> entry;
          for (const auto& t : p_.timers) entry.push_back(Stmt{TimerIncrement{t, *it->second.expr}, fn->loc});
          copy.body->stmts.insert(copy.body->stmts.begin(), std::make_move_iterator(entry.begin()),
                                  std::make_move_iterator(entry.end()));
          copy.wcet_amount = *it->second.expr;
        }
        out.items.push_back({std::move(copy), item.loc});
        continue;
      }
      out.items.push_back(item);
    }
    return out;
  }

 private:
  void check_names() {
    const auto ids = program_identifiers(p_.ast);
    for (const auto& item : p_.ast.items) {
      const auto* a = std::get_if<Annotation>(&item.node);
      if (a && a->kind == AnnotationKind::DefineTimer && ids.contains(a->timer)) {
        throw FrontendError(DiagnosticKind::NameClash, file_, a->loc,
                            "timer '" + a->timer + "' clashes with a program identifier");
      }
    }
  }

  void rewrite_block(Block& b) {
    std::vector<Stmt> out;
    out.reserve(b.stmts.size());
    for (auto& s : b.stmts) {
      if (auto* as = std::get_if<AnnotationStmt>(&s.node)) {
        expand(as->annotation, out);
        continue;
      }
      rewrite_nested(s);
      out.push_back(std::move(s));
    }
    b.stmts = std::move(out);
  }

  void expand(const Annotation& a, std::vector<Stmt>& out) {
    out.push_back(echo(a));
    if (a.kind == AnnotationKind::ResetTimer) {
      out.push_back(Stmt{TimerReset{a.timer}, a.loc});
    } else if (a.kind == AnnotationKind::AssertTimer) {
      out.push_back(Stmt{AssertStmt{*a.expr}, a.loc});
    }
  }

  // Single-statement positions holding an annotation become blocks.
  void rewrite_nested(Stmt& s) {
    auto fix = [&](Stmt& child) {
      if (auto* as = std::get_if<AnnotationStmt>(&child.node)) {
        Block b;
        expand(as->annotation, b.stmts);
        child = Stmt{std::move(b), child.loc};
      } else {
        rewrite_nested(child);
      }
    };
    if (auto* b = std::get_if<Block>(&s.node)) {
      rewrite_block(*b);
    } else if (auto* i = std::get_if<IfStmt>(&s.node)) {
      fix(*i->then_branch);
      if (i->else_branch) fix(**i->else_branch);
    } else if (auto* w = std::get_if<WhileStmt>(&s.node)) {
      fix(*w->body);
    } else if (auto* f = std::get_if<ForStmt>(&s.node)) {
      fix(*f->body);
    }
  }

  const AnnotatedProgram& p_;
  const std::string& file_;
};

void strip_block(Block& b);

void strip_stmt(Stmt& s) {
  if (auto* b = std::get_if<Block>(&s.node)) {
    strip_block(*b);
  } else if (auto* i = std::get_if<IfStmt>(&s.node)) {
    strip_stmt(*i->then_branch);
    if (i->else_branch) strip_stmt(**i->else_branch);
  } else if (auto* w = std::get_if<WhileStmt>(&s.node)) {
    strip_stmt(*w->body);
  } else if (auto* f = std::get_if<ForStmt>(&s.node)) {
    strip_stmt(*f->body);
  } else if (std::holds_alternative<AnnotationStmt>(s.node)) {
    s = Stmt{Block{}, s.loc};
  }
}

void strip_block(Block& b) {
  std::erase_if(b.stmts, [](const Stmt& s) { return std::holds_alternative<AnnotationStmt>(s.node); });
  for (auto& s : b.stmts) strip_stmt(s);
}

}  // namespace

Ast instrument(const AnnotatedProgram& program, const std::string& file) {
  return Instrumenter(program, file).run();
}

Ast strip_annotations(const Ast& ast) {
  Ast out = ast;
  std::erase_if(out.items, [](const TopItem& i) { return std::holds_alternative<Annotation>(i.node); });
  for (auto& item : out.items) {
    if (auto* fn = std::get_if<Function>(&item.node); fn && fn->body) strip_block(*fn->body);
  }
  return out;
}

}  // namespace timedc
