#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

#include "epme/symbolic/polynomial.hpp"

namespace epme::symbolic {

/// A rational function num/den over the derivative-jet alphabet.
///
/// Every instance is normalized on construction: integer and monomial content shared by
/// numerator and denominator is divided out, an exact polynomial quotient is taken when
/// one side divides the other, the denominator's leading coefficient is positive, and zero
/// is 0/1. Common non-monomial factors may survive; two forms of the same function are
/// compared with `equals`, which cross-multiplies.
class RationalExpr {
 public:
  RationalExpr() : den_(mpz_class(1)) {}
  RationalExpr(long value) : num_(mpz_class(value)), den_(mpz_class(1)) {}  // NOLINT
  explicit RationalExpr(const mpq_class& value);
  explicit RationalExpr(Polynomial num);
  RationalExpr(Polynomial num, Polynomial den);

  static RationalExpr symbol(Symbol s) { return RationalExpr(Polynomial::variable(s)); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  int max_order() const;

  RationalExpr operator-() const;
  RationalExpr& operator+=(const RationalExpr& o);
  RationalExpr& operator-=(const RationalExpr& o);
  RationalExpr& operator*=(const RationalExpr& o);
  RationalExpr& operator/=(const RationalExpr& o);
  friend RationalExpr operator+(RationalExpr a, const RationalExpr& b) { return a += b; }
  friend RationalExpr operator-(RationalExpr a, const RationalExpr& b) { return a -= b; }
  friend RationalExpr operator*(RationalExpr a, const RationalExpr& b) { return a *= b; }
  friend RationalExpr operator/(RationalExpr a, const RationalExpr& b) { return a /= b; }
  RationalExpr pow(int n) const;

  /// Byte-for-byte identical canonical forms. Stronger than `equals`.
  bool same_form(const RationalExpr& o) const { return num_ == o.num_ && den_ == o.den_; }

  /// Canonical printing: numerator "/" denominator, each parenthesized when it is not a
  /// single factor. The output parses back to the same form.
  std::string to_string() const;

 private:
  void normalize();
  Polynomial num_;
  Polynomial den_;
};

/// Lets dense matrix products skip structural zeros.
inline bool is_zero_entry(const RationalExpr& x) { return x.is_zero(); }

/// a == b as rational functions: a.num * b.den - b.num * a.den is the zero polynomial.
bool equals(const RationalExpr& a, const RationalExpr& b);

/// d/dt with the jet chain rule. Throws SymbolicError when a resulting derivative order
/// would exceed max_order.
RationalExpr differentiate_t(const RationalExpr& e, int max_order = kDefaultMaxOrder);

/// Partial derivative with respect to one symbol.
RationalExpr partial(const RationalExpr& e, Symbol s);

/// Replaces symbols by expressions; symbols absent from the map stay as they are.
RationalExpr substitute(const RationalExpr& e, const std::map<Symbol, RationalExpr>& values);

/// Exact evaluation. Throws SymbolicError on a missing symbol or a zero denominator.
mpq_class evaluate(const RationalExpr& e, const PointState<mpq_class>& p);
/// IEEE double evaluation of numerator and denominator, then one division.
double evaluate(const RationalExpr& e, const PointState<double>& p);

}  // namespace epme::symbolic
