#include <algorithm>

#include "timedc/annotation.hpp"
#include "timedc/ast_dump.hpp"
#include "timedc/parser.hpp"

namespace timedc {
namespace {

std::optional<Annotation> echo_of(const CommentLine& c, SourceLocation loc, const std::string& file) {
  Token t{TokenKind::PlainComment, c.text, loc, 0};
  try {
    return parse_echo_comment(t, file);
  } catch (const FrontendError&) {
    return std::nullopt;  // an ordinary comment that merely looks like an echo
  }
}

bool is_timer_decl(const VarDecl& d, const std::string& name) {
  return d.name == name && d.type.scalar == ScalarType::UnsignedInt && !d.type.array_size &&
         !d.type.is_const && !d.init && !d.init_list && !d.is_extern;
}

class Recovery {
 public:
  explicit Recovery(const std::string& file) : file_(file) {}

  void run(Ast& ast) {
    auto& items = ast.items;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (auto* fn = std::get_if<Function>(&items[i].node)) {
        if (fn->body) recover_block(*fn->body);
        continue;
      }
      const auto* c = std::get_if<CommentLine>(&items[i].node);
      if (!c || i + 1 >= items.size()) continue;
      auto echo = echo_of(*c, items[i].loc, file_);
      if (!echo) continue;
      auto& next = items[i + 1];
      if (echo->kind == AnnotationKind::DefineTimer) {
        const auto* d = std::get_if<VarDecl>(&next.node);
        if (d && is_timer_decl(*d, echo->timer) &&
            std::find(timers_.begin(), timers_.end(), echo->timer) == timers_.end()) {
          timers_.push_back(echo->timer);
        }
      } else if (echo->kind == AnnotationKind::WcetFunction) {
        auto* fn = std::get_if<Function>(&next.node);
        if (fn && fn->body && !fn->wcet_amount) adopt_increments(*fn, *echo->expr, next.loc);
      }
    }
    ast.timers = timers_;
  }

 private:
  void adopt_increments(Function& fn, const Expr& amount, SourceLocation loc) {
    auto& stmts = fn.body->stmts;
    if (stmts.size() < timers_.size()) fail(loc, fn.name);
    for (std::size_t k = 0; k < timers_.size(); ++k) {
      const auto* a = std::get_if<AssignStmt>(&stmts[k].node);
      if (!a || a->target.name != timers_[k] || a->target.index || a->op != AssignOp::Add || !a->value ||
          !structurally_equal(*a->value, amount)) {
        fail(loc, fn.name);
      }
    }
    for (std::size_t k = 0; k < timers_.size(); ++k) {
      const SourceLocation sloc = stmts[k].loc;
      Expr value = *std::get<AssignStmt>(stmts[k].node).value;
      stmts[k] = Stmt{TimerIncrement{timers_[k], std::move(value)}, sloc};
    }
    fn.wcet_amount = amount;
  }

  void recover_block(Block& b) {
    for (std::size_t i = 0; i < b.stmts.size(); ++i) {
      Stmt& s = b.stmts[i];
      if (auto* inner = std::get_if<Block>(&s.node)) {
        recover_block(*inner);
      } else if (auto* ifs = std::get_if<IfStmt>(&s.node)) {
        recover_nested(*ifs->then_branch);
        if (ifs->else_branch) recover_nested(**ifs->else_branch);
      } else if (auto* ws = std::get_if<WhileStmt>(&s.node)) {
        recover_nested(*ws->body);
      } else if (auto* fs = std::get_if<ForStmt>(&s.node)) {
        recover_nested(*fs->body);
      } else if (auto* c = std::get_if<CommentLine>(&s.node); c && i + 1 < b.stmts.size()) {
        auto echo = echo_of(*c, s.loc, file_);
        if (!echo || echo->kind != AnnotationKind::ResetTimer) continue;
        if (std::find(timers_.begin(), timers_.end(), echo->timer) == timers_.end()) continue;
        Stmt& next = b.stmts[i + 1];
        const auto* a = std::get_if<AssignStmt>(&next.node);
        if (!a || a->target.name != echo->timer || a->target.index || a->op != AssignOp::Set || !a->value) continue;
        const auto* lit = std::get_if<IntLiteral>(&a->value->node);
        if (!lit || lit->value != 0) continue;
        next = Stmt{TimerReset{echo->timer}, next.loc};
      }
    }
  }

  void recover_nested(Stmt& s) {
    if (auto* b = std::get_if<Block>(&s.node)) recover_block(*b);
  }

  [[noreturn]] void fail(SourceLocation loc, const std::string& fn) {
    throw FrontendError(DiagnosticKind::Parse, file_, loc,
                        "function '" + fn +
                            "' follows a WCET-FUNCTION echo but does not start with one increment per timer");
  }

  const std::string& file_;
  std::vector<std::string> timers_;
};

}  // namespace

void recover_instrumentation(Ast& ast, const std::string& file) { Recovery(file).run(ast); }

}  // namespace timedc
