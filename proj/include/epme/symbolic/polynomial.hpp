#pragma once

#include <gmpxx.h>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "epme/symbolic/monomial.hpp"
#include "epme/symbolic/point_state.hpp"

namespace epme::symbolic {

struct Term {
  Monomial monomial;
  mpz_class coeff;
};

/// Sparse multivariate polynomial with integer coefficients. Terms are kept in strictly
/// descending graded-lex order with nonzero coefficients, so equal polynomials have
/// identical term vectors.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(const mpz_class& constant);
  static Polynomial variable(Symbol s);
  static Polynomial monomial(const Monomial& m, const mpz_class& coeff);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }
  bool is_single_term() const { return terms_.size() == 1; }
  /// Leading term in graded-lex order; the polynomial must be nonzero.
  const Term& leading() const { return terms_.front(); }
  /// Constant value; the polynomial must be constant.
  mpz_class constant_value() const { return terms_.empty() ? mpz_class(0) : terms_[0].coeff; }
  int max_order() const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const mpz_class& c) const;
  Polynomial shifted(const Monomial& m) const;
  Polynomial pow(unsigned n) const;

  /// Partial derivative with respect to one symbol.
  Polynomial partial(Symbol s) const;
  /// Total t-derivative: each symbol of order n maps to the same base at order n+1.
  Polynomial time_derivative(int max_order) const;

  /// gcd of all coefficients (nonnegative, zero for the zero polynomial).
  mpz_class content() const;
  /// gcd of all monomials.
  Monomial monomial_content() const;
  /// Exact division by an integer dividing every coefficient.
  Polynomial divided_by(const mpz_class& c) const;
  /// Exact division by a monomial dividing every term.
  Polynomial divided_by(const Monomial& m) const;
  /// Quotient q with q * divisor == *this over Z[x], if one exists.
  std::optional<Polynomial> divide_exact(const Polynomial& divisor) const;

  mpq_class evaluate(const PointState<mpq_class>& p) const;
  double evaluate(const PointState<double>& p) const;

  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  static Polynomial from_unsorted(std::vector<Term> terms);
  std::vector<Term> terms_;
};

}  // namespace epme::symbolic
