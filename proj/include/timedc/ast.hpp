#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "timedc/source.hpp"

namespace timedc {

// Owning pointer with value semantics, for recursive AST nodes.
template <class T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT(google-explicit-constructor)
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  ~Box() = default;

  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }

 private:
  std::unique_ptr<T> ptr_;
};

enum class ScalarType { Void, Int, UnsignedInt, Char, UnsignedChar };

struct TypeSpec {
  ScalarType scalar = ScalarType::Int;
  bool is_const = false;
  bool is_pointer = false;  // parameters only, e.g. `char *argv[]`; opaque
  bool is_array_param = false;  // parameter written with `[]`
  std::optional<std::uint32_t> array_size;
};

// ---- expressions ----

enum class UnaryOp { Negate, LogicalNot };
enum class BinaryOp { Add, Sub, Mul, Div, Mod, Lt, Le, Gt, Ge, Eq, Ne, LogicalAnd, LogicalOr };

const char* spelling(UnaryOp op);
const char* spelling(BinaryOp op);

struct Expr;

struct IntLiteral {
  std::int64_t value = 0;
};
struct NameRef {
  std::string name;
};
struct IndexExpr {
  std::string array;
  Box<Expr> index;
};
struct CallExpr {
  std::string callee;
  std::vector<Expr> args;
};
struct UnaryExpr {
  UnaryOp op;
  Box<Expr> operand;
};
struct BinaryExpr {
  BinaryOp op;
  Box<Expr> lhs;
  Box<Expr> rhs;
};

struct Expr {
  std::variant<IntLiteral, NameRef, IndexExpr, CallExpr, UnaryExpr, BinaryExpr> node;
  SourceLocation loc;
};

Expr make_int(std::int64_t value, SourceLocation loc = {});
Expr make_name(std::string name, SourceLocation loc = {});
Expr make_binary(BinaryOp op, Expr lhs, Expr rhs, SourceLocation loc = {});

// ---- annotations ----

enum class AnnotationKind { DefineTimer, ResetTimer, AssertTimer, WcetFunction };

const char* to_string(AnnotationKind kind);

struct Annotation {
  AnnotationKind kind = AnnotationKind::DefineTimer;
  std::string raw;    // comment text after "//@", trimmed; echoed as "// <raw>"
  std::string timer;  // DefineTimer / ResetTimer
  std::optional<Expr> expr;  // AssertTimer condition, or WcetFunction amount
  std::optional<std::uint64_t> duration;  // WcetFunction amount once known
  SourceLocation loc;
};

// ---- statements ----

struct Stmt;

struct VarDecl {
  TypeSpec type;
  std::string name;
  std::optional<Expr> init;
  std::optional<std::vector<Expr>> init_list;  // `= {a, b, ...}` for arrays
  bool is_extern = false;
  SourceLocation loc;
};

enum class AssignOp { Set, Add, Sub, Mul, Div, Mod, Increment, Decrement };

const char* spelling(AssignOp op);

struct LValue {
  std::string name;
  std::optional<Box<Expr>> index;
};

struct Block {
  std::vector<Stmt> stmts;
};
struct DeclStmt {
  VarDecl decl;
};
struct AssignStmt {
  LValue target;
  AssignOp op = AssignOp::Set;
  std::optional<Expr> value;  // absent for ++ and --
};
struct CallStmt {
  Expr call;  // always a CallExpr
};
struct IfStmt {
  Expr cond;
  Box<Stmt> then_branch;
  std::optional<Box<Stmt>> else_branch;
};
struct WhileStmt {
  Expr cond;
  Box<Stmt> body;
};
struct ForStmt {
  std::optional<Box<Stmt>> init;
  std::optional<Expr> cond;
  std::optional<Box<Stmt>> step;
  Box<Stmt> body;
};
struct ReturnStmt {
  std::optional<Expr> value;
};
struct AssertStmt {
  Expr cond;
};
// Path is abandoned when the condition is false.
struct AssumeStmt {
  Expr cond;
};
struct CommentLine {
  std::string text;  // full comment including the leading "//"
};
struct AnnotationStmt {
  Annotation annotation;
};
// `<timer> += <amount>;` inserted at a WCET-annotated function's entry.
struct TimerIncrement {
  std::string timer;
  Expr amount;
};
// `<timer> = 0;`
struct TimerReset {
  std::string timer;
};

struct Stmt {
  std::variant<Block, DeclStmt, AssignStmt, CallStmt, IfStmt, WhileStmt, ForStmt, ReturnStmt,
               AssertStmt, AssumeStmt, CommentLine, AnnotationStmt, TimerIncrement, TimerReset>
      node;
  SourceLocation loc;
};

// ---- top level ----

struct Param {
  TypeSpec type;
  std::string name;
};

struct Function {
  TypeSpec return_type;
  std::string name;
  std::vector<Param> params;
  std::optional<Block> body;  // nullopt for prototypes and extern stubs
  bool is_extern = false;
  std::optional<Expr> wcet_amount;  // set once timer increments are materialized
  SourceLocation loc;

  bool is_definition() const { return body.has_value(); }
};

struct TopItem {
  std::variant<CommentLine, Annotation, VarDecl, Function> node;
  SourceLocation loc;
};

struct Ast {
  std::vector<TopItem> items;
  // Globals that are timer variables already materialized in the source
  // (recognized from echo comments in instrumented input), in definition order.
  std::vector<std::string> timers;

  const Function* find_function(std::string_view name) const;
  std::vector<const Function*> functions() const;
  std::vector<const VarDecl*> globals() const;
};

// Names of the intrinsics understood by the verifier.
inline constexpr const char* kNondetIntrinsic = "nondet_int";
inline constexpr const char* kAssumeIntrinsic = "__VERIFIER_assume";

}  // namespace timedc
