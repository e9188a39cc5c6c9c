#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epme/linalg/dense_matrix.hpp"
#include "epme/symbolic/rational_expr.hpp"

namespace epme::symbolic {

using ExprMatrix = linalg::DenseMatrix<RationalExpr>;
using ExprVector = std::vector<RationalExpr>;

/// Position of the first entry where two matrices differ, 0-based.
struct EntryRef {
  std::size_t row = 0;
  std::size_t col = 0;
};

ExprVector apply(const ExprMatrix& m, const ExprVector& x);
ExprVector scaled(const ExprVector& x, const RationalExpr& s);

/// Entrywise `equals`. On mismatch returns the first offending entry in row-major order.
std::optional<EntryRef> first_mismatch(const ExprMatrix& a, const ExprMatrix& b);
std::optional<std::size_t> first_mismatch(const ExprVector& a, const ExprVector& b);

ExprMatrix differentiate_t(const ExprMatrix& m, int max_order = kDefaultMaxOrder);
ExprMatrix substitute(const ExprMatrix& m, const std::map<Symbol, RationalExpr>& values);
ExprVector substitute(const ExprVector& x, const std::map<Symbol, RationalExpr>& values);

linalg::QMatrix evaluate(const ExprMatrix& m, const PointState<mpq_class>& p);
linalg::DenseMatrix<double> evaluate(const ExprMatrix& m, const PointState<double>& p);
linalg::QVector evaluate(const ExprVector& x, const PointState<mpq_class>& p);

/// Rank over the field of rational functions, by fraction-free elimination on the
/// matrix with each row multiplied through by its denominators.
std::size_t symbolic_rank(const ExprMatrix& m);

/// Determinant of a square matrix of rational functions.
RationalExpr symbolic_determinant(const ExprMatrix& m);

}  // namespace epme::symbolic
