#include "epme/symbolic/ast.hpp"

namespace epme::symbolic {

namespace ast {
namespace {
ExprAst make(ExprNode node) { return std::make_shared<const ExprNode>(std::move(node)); }

ExprAst binary(ExprNode::Kind kind, ExprAst a, ExprAst b) {
  ExprNode n;
  n.kind = kind;
  n.lhs = std::move(a);
  n.rhs = std::move(b);
  return make(std::move(n));
}

const char* op_name(ExprNode::Kind kind) {
  switch (kind) {
    case ExprNode::Kind::Add: return "+";
    case ExprNode::Kind::Sub: return "-";
    case ExprNode::Kind::Mul: return "*";
    case ExprNode::Kind::Div: return "/";
    default: return "?";
  }
}
}  // namespace

ExprAst constant(const mpq_class& value) {
  ExprNode n;
  n.kind = ExprNode::Kind::Constant;
  n.value = value;
  n.value.canonicalize();
  return make(std::move(n));
}

ExprAst symbol(Symbol s) {
  ExprNode n;
  n.kind = ExprNode::Kind::Symbol;
  n.symbol = s;
  return make(std::move(n));
}

ExprAst add(ExprAst a, ExprAst b) { return binary(ExprNode::Kind::Add, std::move(a), std::move(b)); }
ExprAst sub(ExprAst a, ExprAst b) { return binary(ExprNode::Kind::Sub, std::move(a), std::move(b)); }
ExprAst mul(ExprAst a, ExprAst b) { return binary(ExprNode::Kind::Mul, std::move(a), std::move(b)); }
ExprAst div(ExprAst a, ExprAst b) { return binary(ExprNode::Kind::Div, std::move(a), std::move(b)); }

ExprAst pow(ExprAst base, int exponent) {
  ExprNode n;
  n.kind = ExprNode::Kind::Pow;
  n.lhs = std::move(base);
  n.exponent = exponent;
  return make(std::move(n));
}

ExprAst neg(ExprAst a) {
  ExprNode n;
  n.kind = ExprNode::Kind::Neg;
  n.lhs = std::move(a);
  return make(std::move(n));
}

std::string to_sexpr(const ExprAst& e) {
  switch (e->kind) {
    case ExprNode::Kind::Constant: return e->value.get_str();
    case ExprNode::Kind::Symbol: return e->symbol.name();
    case ExprNode::Kind::Pow: return "(^ " + to_sexpr(e->lhs) + " " + std::to_string(e->exponent) + ")";
    case ExprNode::Kind::Neg: return "(neg " + to_sexpr(e->lhs) + ")";
    default:
      return std::string("(") + op_name(e->kind) + " " + to_sexpr(e->lhs) + " " + to_sexpr(e->rhs) + ")";
  }
}

std::string to_infix(const ExprAst& e) {
  switch (e->kind) {
    case ExprNode::Kind::Constant:
      return e->value < 0 || e->value.get_den() != 1 ? "(" + e->value.get_str() + ")" : e->value.get_str();
    case ExprNode::Kind::Symbol: return e->symbol.name();
    case ExprNode::Kind::Pow: return "(" + to_infix(e->lhs) + ")^(" + std::to_string(e->exponent) + ")";
    case ExprNode::Kind::Neg: return "(-" + to_infix(e->lhs) + ")";
    default:
      return "(" + to_infix(e->lhs) + " " + op_name(e->kind) + " " + to_infix(e->rhs) + ")";
  }
}
}  // namespace ast

RationalExpr canonicalize(const ExprAst& e) {
  switch (e->kind) {
    case ExprNode::Kind::Constant: return RationalExpr(e->value);
    case ExprNode::Kind::Symbol: return RationalExpr::symbol(e->symbol);
    case ExprNode::Kind::Add: return canonicalize(e->lhs) + canonicalize(e->rhs);
    case ExprNode::Kind::Sub: return canonicalize(e->lhs) - canonicalize(e->rhs);
    case ExprNode::Kind::Mul: return canonicalize(e->lhs) * canonicalize(e->rhs);
    case ExprNode::Kind::Div: return canonicalize(e->lhs) / canonicalize(e->rhs);
    case ExprNode::Kind::Pow: return canonicalize(e->lhs).pow(e->exponent);
    case ExprNode::Kind::Neg: return -canonicalize(e->lhs);
  }
  throw SymbolicError("unknown expression node");
}

}  // namespace epme::symbolic
