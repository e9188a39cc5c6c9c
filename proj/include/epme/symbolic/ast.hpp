#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>

#include "epme/symbolic/rational_expr.hpp"
#include "epme/symbolic/symbol.hpp"

namespace epme::symbolic {

struct ExprNode;
/// Immutable expression tree as produced by the parser.
using ExprAst = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { Constant, Symbol, Add, Sub, Mul, Div, Pow, Neg };

  Kind kind = Kind::Constant;
  mpq_class value;          // Constant
  symbolic::Symbol symbol;  // Symbol
  int exponent = 0;         // Pow
  ExprAst lhs;              // binary operand, or the only operand of Pow/Neg
  ExprAst rhs;
};

namespace ast {
ExprAst constant(const mpq_class& value);
ExprAst symbol(Symbol s);
ExprAst add(ExprAst a, ExprAst b);
ExprAst sub(ExprAst a, ExprAst b);
ExprAst mul(ExprAst a, ExprAst b);
ExprAst div(ExprAst a, ExprAst b);
ExprAst pow(ExprAst base, int exponent);
ExprAst neg(ExprAst a);

/// Prefix rendering for tests and diagnostics, e.g. "(* u1 v2)".
std::string to_sexpr(const ExprAst& e);
/// Infix rendering in the surface grammar (fully parenthesized binary nodes).
std::string to_infix(const ExprAst& e);
}  // namespace ast

/// Expands an expression tree to canonical rational form. Throws SymbolicError when a
/// divisor expands to the zero polynomial.
RationalExpr canonicalize(const ExprAst& e);

}  // namespace epme::symbolic
