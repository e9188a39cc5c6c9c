#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "epme/symbolic/ast.hpp"

namespace epme::symbolic {

class ParseError : public SymbolicError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : SymbolicError(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  /// Byte offset into the parsed text.
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Parses the expression surface grammar:
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' exponent)?
///   exponent:= ['-'] INTEGER | '(' ['-'] INTEGER ')'
///   primary := NUMBER | IDENT "'"* | '(' expr ')'
///
/// Identifiers are u1..u3 and v1..v3; each trailing apostrophe adds one t-derivative.
/// '^' binds tighter than unary minus, so -u1^2 is -(u1^2). Numbers are integers or
/// decimals, read exactly.
ExprAst parse(std::string_view text, int max_order = kDefaultMaxOrder);

/// canonicalize(parse(text)).
RationalExpr parse_rational(std::string_view text, int max_order = kDefaultMaxOrder);

}  // namespace epme::symbolic
