#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <vector>

namespace epme::linalg {

/// Univariate polynomial over Q; coeffs()[i] multiplies x^i. Trailing zeros are trimmed.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<mpq_class> coeffs);

  const std::vector<mpq_class>& coeffs() const { return c_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const mpq_class& leading() const { return c_.back(); }

  mpq_class operator()(const mpq_class& x) const;
  std::complex<double> operator()(std::complex<double> x) const;

  QPoly operator-(const QPoly& o) const;
  QPoly operator*(const QPoly& o) const;
  QPoly monic() const;
  /// Division with remainder; divisor nonzero.
  void divmod(const QPoly& divisor, QPoly& quotient, QPoly& remainder) const;
  QPoly derivative() const;

  /// Monic gcd (zero only if both are zero).
  static QPoly gcd(const QPoly& a, const QPoly& b);
  /// Unique polynomial of degree < xs.size() through the points.
  static QPoly interpolate(const std::vector<mpq_class>& xs, const std::vector<mpq_class>& ys);

  /// Rational roots found exactly (linear factors and quadratics with a square
  /// discriminant), each listed once.
  std::vector<mpq_class> rational_roots() const;
  /// All complex roots in double precision, each listed with its multiplicity.
  std::vector<std::complex<double>> roots() const;

  std::string to_string(const std::string& var = "x") const;

  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<mpq_class> c_;
};

/// Exact square root of a nonnegative rational, if it is a perfect square.
bool rational_sqrt(const mpq_class& x, mpq_class& root);

}  // namespace epme::linalg
