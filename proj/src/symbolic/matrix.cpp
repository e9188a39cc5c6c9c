#include "epme/symbolic/matrix.hpp"

#include "epme/linalg/bareiss.hpp"

namespace epme::symbolic {

namespace {

struct PolynomialOps {
  static bool is_zero(const Polynomial& p) { return p.is_zero(); }
  static Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
    auto q = a.divide_exact(b);
    if (!q) throw SymbolicError("inexact division during fraction-free elimination");
    return std::move(*q);
  }
  static std::size_t weight(const Polynomial& p) { return p.terms().size(); }
  static Polynomial zero() { return Polynomial(); }
  static Polynomial one() { return Polynomial(mpz_class(1)); }
  static Polynomial negate(const Polynomial& p) { return -p; }
};

void check_shape(const ExprMatrix& a, const ExprMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw SymbolicError("matrix shape mismatch");
}

/// Row r times the product of its distinct denominators, as polynomials, plus the scale.
linalg::DenseMatrix<Polynomial> to_polynomial_rows(const ExprMatrix& m, RationalExpr* scale) {
  linalg::DenseMatrix<Polynomial> out(m.rows(), m.cols());
  RationalExpr total(1L);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<Polynomial> dens;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Polynomial& d = m(r, c).den();
      if (d.is_constant() && d.leading().coeff == 1) continue;
      bool seen = false;
      for (const auto& e : dens) seen = seen || e == d;
      if (!seen) dens.push_back(d);
    }
    Polynomial factor(mpz_class(1));
    for (const auto& d : dens) factor = factor * d;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const RationalExpr scaled_entry = m(r, c) * RationalExpr(factor);
      if (!scaled_entry.den().is_constant()) throw SymbolicError("row scaling left a denominator");
      // A constant denominator is +1 after normalization unless the entry had rational coefficients.
      auto q = scaled_entry.num().divide_exact(scaled_entry.den());
      if (!q) throw SymbolicError("row scaling left a fractional coefficient");
      out(r, c) = std::move(*q);
    }
    total *= RationalExpr(factor);
  }
  if (scale) *scale = total;
  return out;
}

}  // namespace

ExprVector apply(const ExprMatrix& m, const ExprVector& x) {
  if (m.cols() != x.size()) throw SymbolicError("matrix-vector shape mismatch");
  ExprVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) out[i] += m(i, j) * x[j];
  return out;
}

ExprVector scaled(const ExprVector& x, const RationalExpr& s) {
  ExprVector out;
  out.reserve(x.size());
  for (const auto& e : x) out.push_back(e * s);
  return out;
}

std::optional<EntryRef> first_mismatch(const ExprMatrix& a, const ExprMatrix& b) {
  check_shape(a, b);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!equals(a(i, j), b(i, j))) return EntryRef{i, j};
  return std::nullopt;
}

std::optional<std::size_t> first_mismatch(const ExprVector& a, const ExprVector& b) {
  if (a.size() != b.size()) throw SymbolicError("vector length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!equals(a[i], b[i])) return i;
  return std::nullopt;
}

ExprMatrix differentiate_t(const ExprMatrix& m, int max_order) {
  ExprMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = differentiate_t(m(i, j), max_order);
  return out;
}

ExprMatrix substitute(const ExprMatrix& m, const std::map<Symbol, RationalExpr>& values) {
  ExprMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = substitute(m(i, j), values);
  return out;
}

ExprVector substitute(const ExprVector& x, const std::map<Symbol, RationalExpr>& values) {
  ExprVector out;
  out.reserve(x.size());
  for (const auto& e : x) out.push_back(substitute(e, values));
  return out;
}

linalg::QMatrix evaluate(const ExprMatrix& m, const PointState<mpq_class>& p) {
  linalg::QMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = evaluate(m(i, j), p);
  return out;
}

linalg::DenseMatrix<double> evaluate(const ExprMatrix& m, const PointState<double>& p) {
  linalg::DenseMatrix<double> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = evaluate(m(i, j), p);
  return out;
}

linalg::QVector evaluate(const ExprVector& x, const PointState<mpq_class>& p) {
  linalg::QVector out;
  out.reserve(x.size());
  for (const auto& e : x) out.push_back(evaluate(e, p));
  return out;
}

std::size_t symbolic_rank(const ExprMatrix& m) {
  return linalg::bareiss(to_polynomial_rows(m, nullptr), PolynomialOps{}).rank;
}

RationalExpr symbolic_determinant(const ExprMatrix& m) {
  if (m.rows() != m.cols()) throw SymbolicError("determinant of a non-square matrix");
  RationalExpr scale;
  const auto result = linalg::bareiss(to_polynomial_rows(m, &scale), PolynomialOps{});
  return RationalExpr(result.determinant) / scale;
}

}  // namespace epme::symbolic
