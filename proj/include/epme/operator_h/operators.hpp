#pragma once

#include <gmpxx.h>

#include <stdexcept>

#include "epme/symbolic/matrix.hpp"

namespace epme::operator_h {

using symbolic::ExprMatrix;
using symbolic::ExprVector;
using symbolic::PointState;
using symbolic::RationalExpr;

class OperatorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// H and the matrices derived from it, as rational functions of the jet symbols.
///
/// H is the Jacobian of the external-product determinant divided by u2·u3·v1·v3;
/// H_squared is the product H·H; the primed matrices are entrywise t-derivatives.
struct OperatorBundle {
  ExprMatrix H;
  ExprMatrix H_squared;
  ExprMatrix H_prime;
  ExprMatrix H_second;
  ExprMatrix H_squared_prime;
};

/// Built on first use and shared read-only afterwards.
const OperatorBundle& symbolic_bundle();

/// The same matrices at one point. Derivative matrices need jets of matching order:
/// H_prime and H_squared_prime need order >= 1, H_second needs order >= 2; with a lower
/// order they are left zero and `order` records what was available.
template <class T>
struct OperatorValues {
  linalg::DenseMatrix<T> H;
  linalg::DenseMatrix<T> H_squared;
  linalg::DenseMatrix<T> H_prime;
  linalg::DenseMatrix<T> H_second;
  linalg::DenseMatrix<T> H_squared_prime;
  int order = 0;
};

/// Direct evaluation from H_ij = s_i(δ_ij + m_j x_i / x_j), s = (1,1,1,-1,-1,-1),
/// m = (0,1,1,1,0,1), x = (u, v), and the quotient-rule jets of x_i / x_j.
/// Throws OperatorError when a coordinate is zero.
OperatorValues<double> evaluate_operators(const PointState<double>& p);
OperatorValues<mpq_class> evaluate_operators(const PointState<mpq_class>& p);

/// (u, -v) and (u, v) as symbolic vectors.
ExprVector omega1();
ExprVector omega2();

}  // namespace epme::operator_h
