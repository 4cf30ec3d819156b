#include "timedc/binder.hpp"

#include <algorithm>
#include <set>

namespace timedc {
namespace {

void collect_names(const Expr& e, std::vector<std::pair<std::string, SourceLocation>>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, NameRef>) {
          out.emplace_back(n.name, e.loc);
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          collect_names(*n.operand, out);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          collect_names(*n.lhs, out);
          collect_names(*n.rhs, out);
        } else if constexpr (std::is_same_v<T, IndexExpr>) {
          out.emplace_back(n.array, e.loc);
          collect_names(*n.index, out);
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          for (const auto& a : n.args) collect_names(a, out);
        }
      },
      e.node);
}

template <class Fn>
void for_each_annotation(const Stmt& s, std::vector<std::size_t>& path, Fn&& fn) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AnnotationStmt>) {
          fn(n.annotation, path);
        } else if constexpr (std::is_same_v<T, Block>) {
          for (std::size_t i = 0; i < n.stmts.size(); ++i) {
            path.push_back(i);
            for_each_annotation(n.stmts[i], path, fn);
            path.pop_back();
          }
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          path.push_back(0);
          for_each_annotation(*n.then_branch, path, fn);
          path.pop_back();
          if (n.else_branch) {
            path.push_back(1);
            for_each_annotation(**n.else_branch, path, fn);
            path.pop_back();
          }
        } else if constexpr (std::is_same_v<T, WhileStmt> || std::is_same_v<T, ForStmt>) {
          path.push_back(0);
          for_each_annotation(*n.body, path, fn);
          path.pop_back();
        }
      },
      s.node);
}

class Binder {
 public:
  Binder(Ast ast, const std::string& file) : file_(file) { out_.ast = std::move(ast); }

  AnnotatedProgram run() {
    out_.constants = fold_constants(out_.ast);
    out_.timers = out_.ast.timers;
    const bool materialized = !out_.timers.empty();

    std::optional<Annotation> pending;
    for (const auto& item : out_.ast.items) {
      if (const auto* ann = std::get_if<Annotation>(&item.node)) {
        switch (ann->kind) {
          case AnnotationKind::DefineTimer:
            if (materialized) fail(ann->loc, "cannot add DEFINE-TIMER to an already instrumented program");
            if (std::find(out_.timers.begin(), out_.timers.end(), ann->timer) != out_.timers.end()) {
              fail(ann->loc, "timer '" + ann->timer + "' is defined twice");
            }
            out_.timers.push_back(ann->timer);
            break;
          case AnnotationKind::WcetFunction:
            if (pending) fail(ann->loc, "two WCET-FUNCTION annotations target the same function");
            pending = *ann;
            pending->duration = resolve_duration(*ann->expr, ann->loc);
            break;
          case AnnotationKind::ResetTimer:
          case AnnotationKind::AssertTimer:
            fail(ann->loc, std::string(to_string(ann->kind)) + " must appear inside a function body");
        }
        continue;
      }
      const auto* fn = std::get_if<Function>(&item.node);
      if (!fn) continue;
      if (pending) {
        if (!fn->is_definition()) {
          fail(pending->loc, "WCET-FUNCTION must be followed by a function definition, found declaration of '" +
                                 fn->name + "'");
        }
        if (fn->wcet_amount || out_.wcet_annotations.contains(fn->name)) {
          fail(pending->loc, "two WCET-FUNCTION annotations target function '" + fn->name + "'");
        }
        out_.wcet[fn->name] = *pending->duration;
        out_.wcet_annotations.emplace(fn->name, std::move(*pending));
        pending.reset();
      }
      if (!fn->is_definition()) continue;
      if (fn->wcet_amount) out_.wcet[fn->name] = resolve_duration(*fn->wcet_amount, fn->loc);
      bind_body(*fn);
    }
    if (pending) fail(pending->loc, "WCET-FUNCTION is not followed by a function definition");

    for (const Function* fn : out_.ast.functions()) {
      if (out_.wcet.contains(fn->name)) continue;
      out_.wcet[fn->name] = 0;
      if (fn->name != "main") {
        warn(fn->loc, "function '" + fn->name + "' has no WCET-FUNCTION annotation; its duration is 0");
      }
    }
    return std::move(out_);
  }

 private:
  std::uint64_t resolve_duration(const Expr& e, SourceLocation loc) {
    auto v = evaluate_constant(e, out_.constants);
    if (!v) fail(loc, "WCET duration does not resolve to an integer constant");
    if (*v < 0) fail(loc, "negative WCET " + std::to_string(*v));
    return static_cast<std::uint64_t>(*v);
  }

  void bind_body(const Function& fn) {
    std::vector<std::size_t> path;
    for_each_annotation(Stmt{*fn.body, fn.loc}, path, [&](const Annotation& ann, const std::vector<std::size_t>& p) {
      switch (ann.kind) {
        case AnnotationKind::DefineTimer:
          fail(ann.loc, "DEFINE-TIMER must appear at file scope");
        case AnnotationKind::WcetFunction:
          fail(ann.loc, "WCET-FUNCTION must appear at file scope, before a function definition");
        case AnnotationKind::ResetTimer:
          require_timer(ann.timer, ann.loc);
          break;
        case AnnotationKind::AssertTimer: {
          std::vector<std::pair<std::string, SourceLocation>> names;
          collect_names(*ann.expr, names);
          for (const auto& [name, loc] : names) {
            if (is_timer(name)) continue;
            if (out_.constants.contains(name)) continue;
            if (declared_later(name)) fail(loc, "timer '" + name + "' is used before its DEFINE-TIMER");
            fail(loc, "'" + name + "' in ASSERT-TIMER is neither a timer nor an integer constant");
          }
          break;
        }
      }
      if (fn.name != "main") {
        warn(ann.loc, std::string(to_string(ann.kind)) + " inside function '" + fn.name +
                          "' (outside main) is an extension");
      }
      out_.stmt_annotations.push_back({fn.name, p, ann});
    });
  }

  bool is_timer(const std::string& name) const {
    return std::find(out_.timers.begin(), out_.timers.end(), name) != out_.timers.end();
  }

  bool declared_later(const std::string& name) const {
    for (const auto& item : out_.ast.items) {
      const auto* a = std::get_if<Annotation>(&item.node);
      if (a && a->kind == AnnotationKind::DefineTimer && a->timer == name) return true;
    }
    return false;
  }

  void require_timer(const std::string& name, SourceLocation loc) {
    if (is_timer(name)) return;
    if (declared_later(name)) fail(loc, "timer '" + name + "' is used before its DEFINE-TIMER");
    fail(loc, "'" + name + "' is not a defined timer");
  }

  void warn(SourceLocation loc, std::string msg) {
    out_.warnings.push_back({Severity::Warning, DiagnosticKind::Bind, file_, loc, std::move(msg)});
  }

  [[noreturn]] void fail(SourceLocation loc, const std::string& msg) {
    throw FrontendError(DiagnosticKind::Bind, file_, loc, msg);
  }

  const std::string& file_;
  AnnotatedProgram out_;
};

}  // namespace

std::optional<std::int64_t> evaluate_constant(const Expr& e,
                                              const std::map<std::string, std::int64_t>& constants) {
  return std::visit(
      [&](const auto& n) -> std::optional<std::int64_t> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IntLiteral>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, NameRef>) {
          auto it = constants.find(n.name);
          if (it == constants.end()) return std::nullopt;
          return it->second;
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          auto v = evaluate_constant(*n.operand, constants);
          if (!v) return std::nullopt;
          return n.op == UnaryOp::Negate ? -*v : static_cast<std::int64_t>(*v == 0);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          auto l = evaluate_constant(*n.lhs, constants);
          auto r = evaluate_constant(*n.rhs, constants);
          if (!l || !r) return std::nullopt;
          switch (n.op) {
            case BinaryOp::Add: return *l + *r;
            case BinaryOp::Sub: return *l - *r;
            case BinaryOp::Mul: return *l * *r;
            case BinaryOp::Div:
              if (*r == 0) return std::nullopt;
              return *l / *r;
            case BinaryOp::Mod:
              if (*r == 0) return std::nullopt;
              return *l % *r;
            case BinaryOp::Lt: return *l < *r;
            case BinaryOp::Le: return *l <= *r;
            case BinaryOp::Gt: return *l > *r;
            case BinaryOp::Ge: return *l >= *r;
            case BinaryOp::Eq: return *l == *r;
            case BinaryOp::Ne: return *l != *r;
            case BinaryOp::LogicalAnd: return (*l != 0) && (*r != 0);
            case BinaryOp::LogicalOr: return (*l != 0) || (*r != 0);
          }
          return std::nullopt;
        } else {
          return std::nullopt;
        }
      },
      e.node);
}

std::map<std::string, std::int64_t> fold_constants(const Ast& ast) {
  std::map<std::string, std::int64_t> out;
  for (const VarDecl* d : ast.globals()) {
    if (!d->type.is_const || d->type.array_size || !d->init) continue;
    if (auto v = evaluate_constant(*d->init, out)) out[d->name] = *v;
  }
  return out;
}

std::vector<Annotation> collect_annotations(const Ast& ast) {
  std::vector<Annotation> out;
  for (const auto& item : ast.items) {
    if (const auto* a = std::get_if<Annotation>(&item.node)) {
      out.push_back(*a);
    } else if (const auto* fn = std::get_if<Function>(&item.node); fn && fn->body) {
      std::vector<std::size_t> path;
      for_each_annotation(Stmt{*fn->body, fn->loc}, path,
                          [&](const Annotation& a, const std::vector<std::size_t>&) { out.push_back(a); });
    }
  }
  return out;
}

AnnotatedProgram bind_annotations(Ast ast, const std::string& file) { return Binder(std::move(ast), file).run(); }

}  // namespace timedc
