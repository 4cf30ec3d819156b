#include "timedc/interpreter.hpp"

#include <cstring>
#include <limits>

namespace timedc::vm {
namespace {

struct EvalFault {
  std::string message;
};

std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b));
}
std::int64_t wrap_sub(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) - static_cast<std::uint64_t>(b));
}
std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b));
}

std::vector<std::int64_t>& storage(const VarInfo& v, State& s) {
  return v.global ? s.globals : s.stack.back().locals;
}

std::size_t slot(const VarInfo& v, std::int64_t index) {
  if (index < 0 || index >= static_cast<std::int64_t>(v.size)) {
    throw EvalFault{"array index out of bounds: " + v.name + "[" + std::to_string(index) + "]"};
  }
  return v.offset + static_cast<std::size_t>(index);
}

std::int64_t eval(const Program& p, const State& s, const XExpr& e) {
  switch (e.op) {
    case XOp::Const: return e.imm;
    case XOp::Load: {
      const VarInfo& v = p.variables[e.var];
      return v.global ? s.globals[v.offset] : s.stack.back().locals[v.offset];
    }
    case XOp::LoadIndex: {
      const VarInfo& v = p.variables[e.var];
      const std::size_t at = slot(v, eval(p, s, e.args[0]));
      return v.global ? s.globals[at] : s.stack.back().locals[at];
    }
    case XOp::Timer: {
      const std::uint64_t t = s.timers[static_cast<std::size_t>(e.imm)];
      if (t > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        throw EvalFault{"timer value out of range for arithmetic"};
      }
      return static_cast<std::int64_t>(t);
    }
    case XOp::Neg: return wrap_sub(0, eval(p, s, e.args[0]));
    case XOp::Not: return eval(p, s, e.args[0]) == 0;
    case XOp::And: return eval(p, s, e.args[0]) != 0 && eval(p, s, e.args[1]) != 0;
    case XOp::Or: return eval(p, s, e.args[0]) != 0 || eval(p, s, e.args[1]) != 0;
    default: break;
  }
  const std::int64_t a = eval(p, s, e.args[0]);
  const std::int64_t b = eval(p, s, e.args[1]);
  switch (e.op) {
    case XOp::Add: return wrap_add(a, b);
    case XOp::Sub: return wrap_sub(a, b);
    case XOp::Mul: return wrap_mul(a, b);
    case XOp::Div:
      if (b == 0) throw EvalFault{"division by zero"};
      if (a == std::numeric_limits<std::int64_t>::min() && b == -1) return a;
      return a / b;
    case XOp::Mod:
      if (b == 0) throw EvalFault{"modulo by zero"};
      if (b == -1) return 0;
      return a % b;
    case XOp::Lt: return a < b;
    case XOp::Le: return a <= b;
    case XOp::Gt: return a > b;
    case XOp::Ge: return a >= b;
    case XOp::Eq: return a == b;
    case XOp::Ne: return a != b;
    default: return 0;
  }
}

void record(const Program& p, State& s, TraceEntry::Kind kind, std::uint32_t ref, std::uint32_t line,
            bool outcome = true) {
  if (p.timers.empty() && kind != TraceEntry::Kind::Assert && kind != TraceEntry::Kind::Initial) return;
  auto node = std::make_shared<TraceNode>();
  node->prev = std::move(s.trace);
  node->entry = TraceEntry{kind, ref, line, outcome, s.timers.values()};
  s.trace = std::move(node);
}

// Pushes a frame for `function` and charges its duration to every timer.
void enter(const Program& p, State& s, std::uint32_t function, const std::vector<std::int64_t>& args,
           std::uint32_t line) {
  const FunctionCode& fc = p.functions[function];
  Frame f;
  f.function = function;
  f.locals.assign(fc.locals_size, 0);
  f.loops.assign(fc.loop_count, 0);
  for (std::size_t i = 0; i < fc.params.size(); ++i) {
    const VarInfo& v = p.variables[fc.params[i]];
    f.locals[v.offset] = truncate(args[i], v.type);
  }
  s.stack.push_back(std::move(f));
  try {
    s.timers.advance(fc.duration);
  } catch (const model::TimerOverflow& e) {
    throw EvalFault{e.what()};
  }
  record(p, s, TraceEntry::Kind::Call, function, line);
}

void store(const Program& p, State& s, std::uint32_t var, std::int64_t index, std::int64_t value) {
  const VarInfo& v = p.variables[var];
  storage(v, s)[slot(v, index)] = truncate(value, v.type);
}

}  // namespace

std::vector<TraceEntry> State::trace_entries() const {
  std::vector<TraceEntry> out;
  for (const TraceNode* n = trace.get(); n; n = n->prev.get()) out.push_back(n->entry);
  return {out.rbegin(), out.rend()};
}

std::string State::key() const {
  std::string k;
  auto put = [&](const void* data, std::size_t n) { k.append(static_cast<const char*>(data), n); };
  auto put_u32 = [&](std::uint32_t v) { put(&v, sizeof v); };
  put_u32(static_cast<std::uint32_t>(globals.size()));
  put(globals.data(), globals.size() * sizeof(std::int64_t));
  put_u32(static_cast<std::uint32_t>(stack.size()));
  for (const auto& f : stack) {
    put_u32(f.function);
    put_u32(f.pc);
    put(f.locals.data(), f.locals.size() * sizeof(std::int64_t));
    put(f.loops.data(), f.loops.size() * sizeof(std::uint32_t));
  }
  put(timers.values().data(), timers.size() * sizeof(std::uint64_t));
  return k;
}

State initial_state(const Program& p) {
  State s;
  s.globals = p.global_init;
  s.timers = model::TimerValuation(p.timers.size(), p.timer_width);
  record(p, s, TraceEntry::Kind::Initial, 0, p.functions[p.main].loc.line);
  const std::vector<std::int64_t> zeros(p.functions[p.main].params.size(), 0);
  try {
    enter(p, s, p.main, zeros, p.functions[p.main].loc.line);
  } catch (const EvalFault& e) {
    throw model::TimerOverflow(e.message);
  }
  return s;
}

StepOutcome step(const Program& p, State& s, const StepLimits& limits, StepInfo& info) {
  Frame& f = s.stack.back();
  const FunctionCode& fc = p.functions[f.function];
  const Instr& in = fc.code[f.pc];
  info.loc = in.loc;
  info.function = f.function;
  try {
    switch (in.op) {
      case Op::Assign: {
        const std::int64_t index = in.args.size() > 1 ? eval(p, s, in.args[1]) : 0;
        store(p, s, in.var, index, eval(p, s, in.args[0]));
        ++f.pc;
        return StepOutcome::Continue;
      }
      case Op::Init: {
        const VarInfo& v = p.variables[in.var];
        std::vector<std::int64_t> values(v.size, 0);
        for (std::size_t i = 0; i < in.args.size(); ++i) values[i] = truncate(eval(p, s, in.args[i]), v.type);
        std::copy(values.begin(), values.end(), storage(v, s).begin() + v.offset);
        ++f.pc;
        return StepOutcome::Continue;
      }
      case Op::Nondet: {
        info.lo = eval(p, s, in.args[0]);
        info.hi = eval(p, s, in.args[1]);
        if (info.hi < info.lo) {
          info.message = "empty nondet range [" + std::to_string(info.lo) + ", " + std::to_string(info.hi) + "]";
          return StepOutcome::Fault;
        }
        const auto width = static_cast<std::uint64_t>(info.hi) - static_cast<std::uint64_t>(info.lo) + 1;
        if (width > limits.nondet_width || width == 0) {
          info.message = "nondet domain of " + std::to_string(width) + " values exceeds width bound " +
                         std::to_string(limits.nondet_width);
          return StepOutcome::NondetWidthExceeded;
        }
        return StepOutcome::Branched;
      }
      case Op::Call: {
        std::vector<std::int64_t> args;
        args.reserve(in.args.size());
        for (const auto& a : in.args) args.push_back(eval(p, s, a));
        enter(p, s, in.target, args, in.loc.line);
        return StepOutcome::Continue;
      }
      case Op::CallExtern: {
        for (const auto& a : in.args) eval(p, s, a);
        if (in.var != kNone) store(p, s, in.var, 0, 0);
        ++f.pc;
        return StepOutcome::Continue;
      }
      case Op::Branch:
        f.pc = eval(p, s, in.args[0]) != 0 ? f.pc + 1 : in.target;
        return StepOutcome::Continue;
      case Op::Jump:
        f.pc = in.target;
        return StepOutcome::Continue;
      case Op::LoopEnter:
        f.loops[in.target] = 0;
        ++f.pc;
        return StepOutcome::Continue;
      case Op::LoopIterate:
        if (++f.loops[in.target] > limits.unwind) {
          info.message = "unwinding assertion loop " + std::to_string(in.target) + " (bound " +
                         std::to_string(limits.unwind) + ")";
          return StepOutcome::UnwindExceeded;
        }
        ++f.pc;
        return StepOutcome::Continue;
      case Op::Assert: {
        if (!limits.check_asserts) {
          ++f.pc;
          return StepOutcome::Continue;
        }
        const bool ok = eval(p, s, in.args[0]) != 0;
        record(p, s, TraceEntry::Kind::Assert, in.target, in.loc.line, ok);
        if (!ok) {
          info.assertion = in.target;
          return StepOutcome::AssertionViolated;
        }
        ++f.pc;
        return StepOutcome::Continue;
      }
      case Op::Assume:
        if (eval(p, s, in.args[0]) == 0) return StepOutcome::Pruned;
        ++f.pc;
        return StepOutcome::Continue;
      case Op::ResetTimer:
        s.timers.reset(in.target);
        record(p, s, TraceEntry::Kind::Reset, in.target, in.loc.line);
        ++f.pc;
        return StepOutcome::Continue;
      case Op::Return: {
        const std::int64_t value = in.args.empty() ? 0 : truncate(eval(p, s, in.args[0]), fc.return_type);
        s.stack.pop_back();
        if (s.stack.empty()) return StepOutcome::Terminated;
        Frame& caller = s.stack.back();
        const Instr& site = p.functions[caller.function].code[caller.pc];
        if (site.var != kNone) store(p, s, site.var, 0, value);
        ++caller.pc;
        return StepOutcome::Continue;
      }
    }
  } catch (const EvalFault& e) {
    info.message = e.message;
    return StepOutcome::Fault;
  }
  return StepOutcome::Fault;
}

StepOutcome run(const Program& p, State& s, const StepLimits& limits, StepInfo& info) {
  while (true) {
    const StepOutcome o = step(p, s, limits, info);
    if (o != StepOutcome::Continue) return o;
  }
}

void apply_choice(const Program& p, State& s, std::int64_t value) {
  Frame& f = s.stack.back();
  const Instr& in = p.functions[f.function].code[f.pc];
  if (in.var != kNone) store(p, s, in.var, 0, value);
  s.choices.push_back(value);
  ++f.pc;
}

}  // namespace timedc::vm
