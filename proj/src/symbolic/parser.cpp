#include "epme/symbolic/parser.hpp"

#include <cctype>

namespace epme::symbolic {

namespace {

constexpr int kMaxExponent = 64;

class Parser {
 public:
  Parser(std::string_view text, int max_order) : text_(text), max_order_(max_order) {}

  ExprAst run() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    ExprAst e = expr();
    skip_space();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return e;
  }

 private:
  ExprAst expr() {
    ExprAst lhs = term();
    for (;;) {
      skip_space();
      if (accept('+')) {
        lhs = ast::add(lhs, term());
      } else if (accept('-')) {
        lhs = ast::sub(lhs, term());
      } else {
        return lhs;
      }
    }
  }

  ExprAst term() {
    ExprAst lhs = unary();
    for (;;) {
      skip_space();
      if (accept('*')) {
        lhs = ast::mul(lhs, unary());
      } else if (accept('/')) {
        lhs = ast::div(lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  ExprAst unary() {
    skip_space();
    if (accept('-')) return ast::neg(unary());
    if (accept('+')) return unary();
    return power();
  }

  ExprAst power() {
    ExprAst base = primary();
    skip_space();
    if (!accept('^')) return base;
    const int e = exponent();
    skip_space();
    if (peek() == '^') throw ParseError("chained '^' is not supported", pos_);
    return ast::pow(base, e);
  }

  int exponent() {
    skip_space();
    const std::size_t start = pos_;
    const bool parenthesized = accept('(');
    skip_space();
    const bool negative = accept('-');
    skip_space();
    const std::size_t digits_at = pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("non-integer exponent", start);
    long value = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (text_[pos_++] - '0');
      if (value > kMaxExponent) throw ParseError("exponent too large", digits_at);
    }
    if (peek() == '.') throw ParseError("non-integer exponent", start);
    if (parenthesized) {
      skip_space();
      if (!accept(')')) throw ParseError("non-integer exponent", start);
    }
    return static_cast<int>(negative ? -value : value);
  }

  ExprAst primary() {
    skip_space();
    const std::size_t start = pos_;
    const char c = peek();
    if (c == '(') {
      ++pos_;
      ExprAst inner = expr();
      skip_space();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (c == '\0') throw ParseError("unexpected end of expression", start);
    throw ParseError(std::string("unexpected '") + c + "'", start);
  }

  ExprAst number() {
    const std::size_t start = pos_;
    std::string digits;
    std::size_t fraction_digits = 0;
    bool seen_point = false;
    while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
      if (peek() == '.') {
        if (seen_point) throw ParseError("malformed number", start);
        seen_point = true;
        ++pos_;
        continue;
      }
      digits.push_back(text_[pos_++]);
      if (seen_point) ++fraction_digits;
    }
    if (digits.empty()) throw ParseError("malformed number", start);
    mpz_class den = 1;
    for (std::size_t i = 0; i < fraction_digits; ++i) den *= 10;
    mpq_class value(mpz_class(digits, 10), den);
    value.canonicalize();
    return ast::constant(value);
  }

  ExprAst identifier() {
    const std::size_t start = pos_;
    std::string name;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') name.push_back(text_[pos_++]);
    int order = 0;
    while (peek() == '\'') {
      ++order;
      ++pos_;
    }
    int base = -1;
    if (name.size() == 2 && (name[0] == 'u' || name[0] == 'v') && name[1] >= '1' && name[1] <= '3')
      base = (name[0] == 'u' ? 0 : 3) + (name[1] - '1');
    if (base < 0) throw ParseError("unknown identifier '" + name + "'", start);
    if (order > max_order_)
      throw ParseError("derivative order " + std::to_string(order) + " of '" + name + "' exceeds maximum " +
                           std::to_string(max_order_),
                       start);
    return ast::symbol(Symbol{static_cast<Base>(base), order});
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  int max_order_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprAst parse(std::string_view text, int max_order) {
  if (max_order < 0 || max_order > kOrderCap)
    throw SymbolicError("maximum derivative order must be 0.." + std::to_string(kOrderCap));
  return Parser(text, max_order).run();
}

RationalExpr parse_rational(std::string_view text, int max_order) { return canonicalize(parse(text, max_order)); }

}  // namespace epme::symbolic
