#include <algorithm>
#include <map>
#include <set>

#include "timedc/binder.hpp"
#include "timedc/instrument.hpp"
#include "timedc/program.hpp"

namespace timedc::vm {

std::int64_t truncate(std::int64_t v, ValueType t) {
  switch (t) {
    case ValueType::Int32: return static_cast<std::int32_t>(static_cast<std::uint32_t>(v));
    case ValueType::UInt32: return static_cast<std::uint32_t>(v);
    case ValueType::Int8: return static_cast<std::int8_t>(static_cast<std::uint8_t>(v));
    case ValueType::UInt8: return static_cast<std::uint8_t>(v);
    case ValueType::Wide:
    case ValueType::Opaque: return v;
  }
  return v;
}

namespace {

ValueType value_type(const TypeSpec& t) {
  if (t.is_pointer || t.is_array_param) return ValueType::Opaque;
  switch (t.scalar) {
    case ScalarType::Int: return ValueType::Int32;
    case ScalarType::UnsignedInt: return ValueType::UInt32;
    case ScalarType::Char: return ValueType::Int8;
    case ScalarType::UnsignedChar: return ValueType::UInt8;
    case ScalarType::Void: return ValueType::Opaque;
  }
  return ValueType::Int32;
}

XExpr constant(std::int64_t v) { return XExpr{XOp::Const, v, kNone, {}}; }

XExpr load(std::uint32_t var) { return XExpr{XOp::Load, 0, var, {}}; }

XExpr binary(XOp op, XExpr a, XExpr b) {
  XExpr e{op, 0, kNone, {}};
  e.args.push_back(std::move(a));
  e.args.push_back(std::move(b));
  return e;
}

XOp binary_op(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return XOp::Add;
    case BinaryOp::Sub: return XOp::Sub;
    case BinaryOp::Mul: return XOp::Mul;
    case BinaryOp::Div: return XOp::Div;
    case BinaryOp::Mod: return XOp::Mod;
    case BinaryOp::Lt: return XOp::Lt;
    case BinaryOp::Le: return XOp::Le;
    case BinaryOp::Gt: return XOp::Gt;
    case BinaryOp::Ge: return XOp::Ge;
    case BinaryOp::Eq: return XOp::Eq;
    case BinaryOp::Ne: return XOp::Ne;
    case BinaryOp::LogicalAnd: return XOp::And;
    case BinaryOp::LogicalOr: return XOp::Or;
  }
  return XOp::Add;
}

bool has_call(const Expr& e) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, CallExpr>) {
          return true;
        } else if constexpr (std::is_same_v<T, IndexExpr>) {
          return has_call(*n.index);
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          return has_call(*n.operand);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          return has_call(*n.lhs) || has_call(*n.rhs);
        } else {
          return false;
        }
      },
      e.node);
}

class Lowerer {
 public:
  Lowerer(const Ast& ast, const std::string& file, unsigned width) : ast_(ast), file_(file) {
    prog_.file = file;
    prog_.timers = ast.timers;
    prog_.timer_width = width;
  }

  Program run() {
    constants_ = fold_constants(ast_);
    for (const auto& item : ast_.items) {
      if (const auto* d = std::get_if<VarDecl>(&item.node)) declare_global(*d);
    }
    for (const auto& item : ast_.items) {
      const auto* fn = std::get_if<Function>(&item.node);
      if (!fn) continue;
      if (fn->is_definition()) {
        function_ids_[fn->name] = static_cast<std::uint32_t>(prog_.functions.size());
        FunctionCode code;
        code.name = fn->name;
        code.loc = fn->loc;
        code.return_type = value_type(fn->return_type);
        code.returns_value = fn->return_type.scalar != ScalarType::Void;
        if (fn->wcet_amount) {
          auto v = evaluate_constant(*fn->wcet_amount, constants_);
          if (!v || *v < 0) fail(fn->loc, "WCET of '" + fn->name + "' is not a nonnegative constant");
          code.duration = static_cast<std::uint64_t>(*v);
        }
        prog_.functions.push_back(std::move(code));
      } else {
        externs_.insert({fn->name, fn->return_type.scalar != ScalarType::Void});
      }
    }
    for (const auto& item : ast_.items) {
      const auto* fn = std::get_if<Function>(&item.node);
      if (fn && fn->is_definition()) lower_function(*fn);
    }
    auto it = function_ids_.find("main");
    if (it == function_ids_.end()) fail({}, "program has no 'main' function");
    prog_.main = it->second;
    return std::move(prog_);
  }

 private:
  // ---- declarations ----

  std::uint32_t add_variable(VarInfo v) {
    prog_.variables.push_back(std::move(v));
    return static_cast<std::uint32_t>(prog_.variables.size() - 1);
  }

  void declare_global(const VarDecl& d) {
    if (globals_.contains(d.name)) fail(d.loc, "global '" + d.name + "' declared twice");
    VarInfo v;
    v.name = d.name;
    v.global = true;
    v.offset = prog_.globals_size;
    v.array = d.type.array_size.has_value();
    v.size = d.type.array_size.value_or(1);
    v.type = value_type(d.type);
    prog_.globals_size += v.size;
    prog_.global_init.resize(prog_.globals_size, 0);
    auto init_value = [&](const Expr& e) {
      auto value = evaluate_constant(e, constants_);
      if (!value) fail(d.loc, "initializer of global '" + d.name + "' is not a constant expression");
      return truncate(*value, v.type);
    };
    if (d.init) prog_.global_init[v.offset] = init_value(*d.init);
    if (d.init_list) {
      for (std::size_t i = 0; i < d.init_list->size(); ++i) {
        prog_.global_init[v.offset + i] = init_value((*d.init_list)[i]);
      }
    }
    if (d.type.is_const) consts_.insert(d.name);
    globals_[d.name] = add_variable(std::move(v));
  }

  std::uint32_t declare_local(const std::string& name, const TypeSpec& type, ValueType vt) {
    VarInfo v;
    v.name = name;
    v.offset = fn_->locals_size;
    v.array = type.array_size.has_value();
    v.size = type.array_size.value_or(1);
    v.type = vt;
    fn_->locals_size += v.size;
    const std::uint32_t id = add_variable(std::move(v));
    scopes_.back()[name] = id;
    if (type.is_const) local_consts_.insert(id);
    return id;
  }

  std::uint32_t temp() {
    VarInfo v;
    v.name = "$t" + std::to_string(fn_->locals_size);
    v.offset = fn_->locals_size++;
    v.type = ValueType::Wide;
    return add_variable(std::move(v));
  }

  enum class NameKind { Variable, Timer, Unknown };

  NameKind resolve(const std::string& name, std::uint32_t& id) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) {
        id = found->second;
        return NameKind::Variable;
      }
    }
    auto t = std::find(prog_.timers.begin(), prog_.timers.end(), name);
    if (t != prog_.timers.end()) {
      id = static_cast<std::uint32_t>(t - prog_.timers.begin());
      return NameKind::Timer;
    }
    auto g = globals_.find(name);
    if (g != globals_.end()) {
      id = g->second;
      return NameKind::Variable;
    }
    return NameKind::Unknown;
  }

  // ---- functions ----

  void lower_function(const Function& fn) {
    fn_ = &prog_.functions[function_ids_.at(fn.name)];
    fn_name_ = fn.name;
    scopes_.assign(1, {});
    for (const auto& p : fn.params) {
      TypeSpec scalar = p.type;
      scalar.array_size.reset();
      fn_->params.push_back(declare_local(p.name, scalar, value_type(p.type)));
    }
    lower_block(*fn.body);
    emit(Op::Return, fn.loc);
    scopes_.clear();
    fn_ = nullptr;
  }

  std::uint32_t here() const { return static_cast<std::uint32_t>(fn_->code.size()); }

  std::uint32_t emit(Instr i) {
    fn_->code.push_back(std::move(i));
    return here() - 1;
  }

  std::uint32_t emit(Op op, SourceLocation loc, std::vector<XExpr> args = {}, std::uint32_t target = 0,
                     std::uint32_t var = kNone) {
    Instr i;
    i.op = op;
    i.loc = loc;
    i.var = var;
    i.args = std::move(args);
    i.target = target;
    return emit(std::move(i));
  }

  void lower_block(const Block& b) {
    scopes_.emplace_back();
    for (const auto& s : b.stmts) lower_stmt(s);
    scopes_.pop_back();
  }

  void lower_stmt(const Stmt& s) {
    std::visit([&](const auto& n) { lower(n, s.loc); }, s.node);
  }

  void lower(const Block& b, SourceLocation) { lower_block(b); }

  void lower(const DeclStmt& d, SourceLocation loc) {
    const VarDecl& decl = d.decl;
    if (decl.is_extern) fail(loc, "local extern declarations are not supported");
    std::vector<XExpr> values;
    if (decl.init) values.push_back(rvalue(*decl.init, loc));
    if (decl.init_list) {
      for (const auto& e : *decl.init_list) values.push_back(rvalue(e, loc));
    }
    const std::uint32_t id = declare_local(decl.name, decl.type, value_type(decl.type));
    emit(Op::Init, loc, std::move(values), 0, id);
  }

  void lower(const AssignStmt& a, SourceLocation loc) {
    std::uint32_t id = 0;
    switch (resolve(a.target.name, id)) {
      case NameKind::Timer:
        fail(loc, "timer '" + a.target.name + "' may only be changed by RESET-TIMER or a WCET increment");
      case NameKind::Unknown:
        fail(loc, "unknown variable '" + a.target.name + "'");
      case NameKind::Variable:
        break;
    }
    const VarInfo& v = prog_.variables[id];
    if (v.type == ValueType::Opaque) fail(loc, "'" + a.target.name + "' cannot be assigned");
    if (local_consts_.contains(id) || (v.global && consts_.contains(v.name))) {
      fail(loc, "assignment to constant '" + a.target.name + "'");
    }
    if (v.array != a.target.index.has_value()) {
      fail(loc, v.array ? "array '" + v.name + "' needs an index" : "'" + v.name + "' is not an array");
    }
    std::optional<XExpr> index;
    if (a.target.index) index = rvalue(**a.target.index, loc);
    XExpr current = index ? XExpr{XOp::LoadIndex, 0, id, {*index}} : load(id);
    XExpr value;
    switch (a.op) {
      case AssignOp::Set: value = rvalue(*a.value, loc); break;
      case AssignOp::Add: value = binary(XOp::Add, current, rvalue(*a.value, loc)); break;
      case AssignOp::Sub: value = binary(XOp::Sub, current, rvalue(*a.value, loc)); break;
      case AssignOp::Mul: value = binary(XOp::Mul, current, rvalue(*a.value, loc)); break;
      case AssignOp::Div: value = binary(XOp::Div, current, rvalue(*a.value, loc)); break;
      case AssignOp::Mod: value = binary(XOp::Mod, current, rvalue(*a.value, loc)); break;
      case AssignOp::Increment: value = binary(XOp::Add, current, constant(1)); break;
      case AssignOp::Decrement: value = binary(XOp::Sub, current, constant(1)); break;
    }
    Instr i;
    i.op = Op::Assign;
    i.loc = loc;
    i.var = id;
    i.args.push_back(std::move(value));
    if (index) i.args.push_back(std::move(*index));
    emit(std::move(i));
  }

  void lower(const CallStmt& c, SourceLocation loc) { call(std::get<CallExpr>(c.call.node), loc, false); }

  void lower(const IfStmt& s, SourceLocation loc) {
    XExpr cond = rvalue(s.cond, loc);
    const std::uint32_t branch = emit(Op::Branch, loc, {std::move(cond)});
    lower_stmt(*s.then_branch);
    if (s.else_branch) {
      const std::uint32_t jump = emit(Op::Jump, loc);
      fn_->code[branch].target = here();
      lower_stmt(**s.else_branch);
      fn_->code[jump].target = here();
    } else {
      fn_->code[branch].target = here();
    }
  }

  void lower(const WhileStmt& s, SourceLocation loc) {
    const std::uint32_t slot = fn_->loop_count++;
    emit(Op::LoopEnter, loc, {}, slot);
    const std::uint32_t head = here();
    XExpr cond = rvalue(s.cond, loc);
    const std::uint32_t branch = emit(Op::Branch, loc, {std::move(cond)});
    emit(Op::LoopIterate, loc, {}, slot);
    lower_stmt(*s.body);
    emit(Op::Jump, loc, {}, head);
    fn_->code[branch].target = here();
  }

  void lower(const ForStmt& s, SourceLocation loc) {
    scopes_.emplace_back();
    if (s.init) lower_stmt(**s.init);
    const std::uint32_t slot = fn_->loop_count++;
    emit(Op::LoopEnter, loc, {}, slot);
    const std::uint32_t head = here();
    std::uint32_t branch = kNone;
    if (s.cond) {
      XExpr cond = rvalue(*s.cond, loc);
      branch = emit(Op::Branch, loc, {std::move(cond)});
    }
    emit(Op::LoopIterate, loc, {}, slot);
    lower_stmt(*s.body);
    if (s.step) lower_stmt(**s.step);
    emit(Op::Jump, loc, {}, head);
    if (branch != kNone) fn_->code[branch].target = here();
    scopes_.pop_back();
  }

  void lower(const ReturnStmt& r, SourceLocation loc) {
    std::vector<XExpr> args;
    if (r.value) {
      if (!fn_->returns_value) fail(loc, "void function '" + fn_name_ + "' returns a value");
      args.push_back(rvalue(*r.value, loc));
    }
    emit(Op::Return, loc, std::move(args));
  }

  void lower(const AssertStmt& a, SourceLocation loc) {
    XExpr cond = rvalue(a.cond, loc);
    prog_.assertions.push_back({loc.line, fn_name_, emit_expr(a.cond)});
    emit(Op::Assert, loc, {std::move(cond)}, static_cast<std::uint32_t>(prog_.assertions.size() - 1));
  }

  void lower(const AssumeStmt& a, SourceLocation loc) { emit(Op::Assume, loc, {rvalue(a.cond, loc)}); }

  void lower(const CommentLine&, SourceLocation) {}
  void lower(const AnnotationStmt&, SourceLocation) {}
  void lower(const TimerIncrement&, SourceLocation) {}

  void lower(const TimerReset& r, SourceLocation loc) {
    std::uint32_t id = 0;
    if (resolve(r.timer, id) != NameKind::Timer) fail(loc, "'" + r.timer + "' is not a timer");
    emit(Op::ResetTimer, loc, {}, id);
  }

  // ---- expressions ----

  // Emits the call and returns the temp that holds its value (kNone when
  // the value is not wanted).
  std::uint32_t call(const CallExpr& c, SourceLocation loc, bool want_value) {
    if (c.callee == kNondetIntrinsic) {
      if (c.args.size() != 2) fail(loc, std::string(kNondetIntrinsic) + " takes (lo, hi)");
      std::vector<XExpr> args;
      args.push_back(rvalue(c.args[0], loc));
      args.push_back(rvalue(c.args[1], loc));
      const std::uint32_t t = want_value ? temp() : kNone;
      emit(Op::Nondet, loc, std::move(args), 0, t);
      return t;
    }
    auto it = function_ids_.find(c.callee);
    if (it != function_ids_.end()) {
      const FunctionCode& callee = prog_.functions[it->second];
      if (c.args.size() != callee.params.size()) {
        fail(loc, "'" + c.callee + "' expects " + std::to_string(callee.params.size()) + " argument(s)");
      }
      if (want_value && !callee.returns_value) fail(loc, "void function '" + c.callee + "' used as a value");
      std::vector<XExpr> args;
      for (const auto& a : c.args) args.push_back(argument(a, loc));
      const std::uint32_t t = want_value ? temp() : kNone;
      emit(Op::Call, loc, std::move(args), it->second, t);
      return t;
    }
    auto ext = externs_.find(c.callee);
    if (ext == externs_.end()) fail(loc, "call to undeclared function '" + c.callee + "'");
    if (want_value && !ext->second) fail(loc, "void function '" + c.callee + "' used as a value");
    std::vector<XExpr> args;
    for (const auto& a : c.args) args.push_back(argument(a, loc));
    const std::uint32_t t = want_value ? temp() : kNone;
    emit(Op::CallExtern, loc, std::move(args), 0, t);
    return t;
  }

  // Arrays and opaque parameters may be passed along but carry no value.
  XExpr argument(const Expr& e, SourceLocation loc) {
    if (const auto* n = std::get_if<NameRef>(&e.node)) {
      std::uint32_t id = 0;
      if (resolve(n->name, id) == NameKind::Variable &&
          (prog_.variables[id].array || prog_.variables[id].type == ValueType::Opaque)) {
        return constant(0);
      }
    }
    return rvalue(e, loc);
  }

  XExpr rvalue(const Expr& e, SourceLocation loc) {
    return std::visit(
        [&](const auto& n) -> XExpr {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, IntLiteral>) {
            return constant(n.value);
          } else if constexpr (std::is_same_v<T, NameRef>) {
            std::uint32_t id = 0;
            switch (resolve(n.name, id)) {
              case NameKind::Timer: return XExpr{XOp::Timer, id, kNone, {}};
              case NameKind::Unknown: fail(e.loc, "unknown variable '" + n.name + "'");
              case NameKind::Variable: break;
            }
            const VarInfo& v = prog_.variables[id];
            if (v.array) fail(e.loc, "array '" + n.name + "' used as a value");
            if (v.type == ValueType::Opaque) fail(e.loc, "parameter '" + n.name + "' has no integer value");
            return load(id);
          } else if constexpr (std::is_same_v<T, IndexExpr>) {
            std::uint32_t id = 0;
            if (resolve(n.array, id) != NameKind::Variable || !prog_.variables[id].array) {
              fail(e.loc, "'" + n.array + "' is not an array");
            }
            XExpr x{XOp::LoadIndex, 0, id, {}};
            x.args.push_back(rvalue(*n.index, loc));
            return x;
          } else if constexpr (std::is_same_v<T, CallExpr>) {
            return load(call(n, e.loc.line ? e.loc : loc, true));
          } else if constexpr (std::is_same_v<T, UnaryExpr>) {
            XExpr x{n.op == UnaryOp::Negate ? XOp::Neg : XOp::Not, 0, kNone, {}};
            x.args.push_back(rvalue(*n.operand, loc));
            return x;
          } else {
            const bool logical = n.op == BinaryOp::LogicalAnd || n.op == BinaryOp::LogicalOr;
            if (logical && has_call(*n.rhs)) return short_circuit(n, loc);
            XExpr lhs = rvalue(*n.lhs, loc);
            XExpr rhs = rvalue(*n.rhs, loc);
            return binary(binary_op(n.op), std::move(lhs), std::move(rhs));
          }
        },
        e.node);
  }

  // `a && b` / `a || b` whose right operand calls a function: the call must
  // only happen when `a` does not decide the result.
  XExpr short_circuit(const BinaryExpr& n, SourceLocation loc) {
    const bool is_and = n.op == BinaryOp::LogicalAnd;
    const std::uint32_t t = temp();
    emit(Op::Assign, loc, {constant(is_and ? 0 : 1)}, 0, t);
    XExpr lhs = rvalue(*n.lhs, loc);
    if (!is_and) {
      XExpr negated{XOp::Not, 0, kNone, {}};
      negated.args.push_back(std::move(lhs));
      lhs = std::move(negated);
    }
    const std::uint32_t skip = emit(Op::Branch, loc, {std::move(lhs)});
    XExpr rhs = rvalue(*n.rhs, loc);
    emit(Op::Assign, loc, {binary(XOp::Ne, std::move(rhs), constant(0))}, 0, t);
    fn_->code[skip].target = here();
    return load(t);
  }

  [[noreturn]] void fail(SourceLocation loc, const std::string& msg) const {
    throw FrontendError(DiagnosticKind::Semantic, file_, loc, msg);
  }

  const Ast& ast_;
  const std::string& file_;
  Program prog_;
  std::map<std::string, std::int64_t> constants_;
  std::map<std::string, std::uint32_t> globals_;
  std::set<std::string> consts_;
  std::set<std::uint32_t> local_consts_;
  std::map<std::string, std::uint32_t> function_ids_;
  std::map<std::string, bool> externs_;  // name -> returns a value
  FunctionCode* fn_ = nullptr;
  std::string fn_name_;
  std::vector<std::map<std::string, std::uint32_t>> scopes_;
};

}  // namespace

Program lower(const Ast& ast, const std::string& file, unsigned timer_width) {
  return Lowerer(ast, file, timer_width).run();
}

}  // namespace timedc::vm
