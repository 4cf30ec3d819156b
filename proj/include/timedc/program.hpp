#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "timedc/ast.hpp"

namespace timedc::vm {

inline constexpr std::uint32_t kNone = 0xffffffffu;

// Storage type of a variable; stores truncate to it.
enum class ValueType { Int32, UInt32, Int8, UInt8, Wide, Opaque };

std::int64_t truncate(std::int64_t v, ValueType t);

struct VarInfo {
  std::string name;
  bool global = false;
  std::uint32_t offset = 0;
  std::uint32_t size = 1;  // elements; > 1 or `array` for arrays
  bool array = false;
  ValueType type = ValueType::Int32;
};

enum class XOp {
  Const,
  Load,       // var
  LoadIndex,  // var[args[0]]
  Timer,      // imm = timer index
  Neg,
  Not,
  Add,
  Sub,
  Mul,
  Div,
  Mod,
  Lt,
  Le,
  Gt,
  Ge,
  Eq,
  Ne,
  And,
  Or,
};

// Side-effect free expression; calls have already been hoisted out.
struct XExpr {
  XOp op = XOp::Const;
  std::int64_t imm = 0;
  std::uint32_t var = kNone;
  std::vector<XExpr> args;
};

enum class Op {
  Assign,       // var[args[1]] = args[0]; var = args[0] for scalars
  Init,         // var = {args...}, remaining elements zero
  Nondet,       // var? = value in [args[0], args[1]]
  Call,         // var? = functions[target](args...)
  CallExtern,   // evaluates args; var? = 0
  Branch,       // if !args[0] goto target
  Jump,         // goto target
  LoopEnter,    // loop counter `target` = 0
  LoopIterate,  // ++loop counter `target`; beyond unwind is a bound violation
  Assert,       // args[0]; target = assertion id
  Assume,       // args[0]; false abandons the path
  ResetTimer,   // target = timer index
  Return,       // args: optional value
};

struct Instr {
  Op op = Op::Jump;
  SourceLocation loc;
  std::uint32_t var = kNone;
  std::vector<XExpr> args;
  std::uint32_t target = 0;
};

struct FunctionCode {
  std::string name;
  std::vector<std::uint32_t> params;  // variable ids
  std::uint32_t locals_size = 0;
  std::uint32_t loop_count = 0;
  std::vector<Instr> code;
  std::uint64_t duration = 0;  // charged to every timer on entry
  ValueType return_type = ValueType::Int32;
  bool returns_value = true;
  SourceLocation loc;
};

struct AssertionInfo {
  std::uint32_t line = 0;
  std::string function;
  std::string expression;
};

struct Program {
  std::string file;
  std::vector<VarInfo> variables;
  std::vector<FunctionCode> functions;
  std::uint32_t main = kNone;
  std::uint32_t globals_size = 0;
  std::vector<std::int64_t> global_init;
  std::vector<std::string> timers;
  std::vector<AssertionInfo> assertions;
  unsigned timer_width = 64;
};

// Translates an instrumented Ast into instructions. Durations come from each
// function's materialized WCET amount. Throws FrontendError(Semantic) for
// programs outside the executable subset: no `main`, unknown variables,
// non-constant global initializers, writes to timers or constants.
Program lower(const Ast& ast, const std::string& file, unsigned timer_width = 64);

}  // namespace timedc::vm
