#pragma once

#include <string>

#include "timedc/ast.hpp"

namespace timedc {

// Canonical S-expression rendering that ignores source locations. Two trees
// are structurally equal exactly when their renderings are equal.
std::string to_sexpr(const Expr& e);
std::string to_sexpr(const Stmt& s);
std::string to_sexpr(const Ast& ast);

inline bool structurally_equal(const Expr& a, const Expr& b) { return to_sexpr(a) == to_sexpr(b); }
inline bool structurally_equal(const Ast& a, const Ast& b) { return to_sexpr(a) == to_sexpr(b); }

}  // namespace timedc
