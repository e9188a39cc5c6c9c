#include "epme/operator_h/operators.hpp"

#include <algorithm>

#include "epme/tuple_ops/tuple_ops.hpp"

namespace epme::operator_h {

namespace {

constexpr int kSign[6] = {1, 1, 1, -1, -1, -1};
constexpr int kMask[6] = {0, 1, 1, 1, 0, 1};

template <class T>
OperatorValues<T> evaluate_direct(const PointState<T>& p) {
  if (!p.coordinates_nonzero()) throw OperatorError("operator needs nonzero u_i, v_i");
  const int order = std::min(p.max_order(), 2);
  const auto x = p.coordinates(0);
  std::array<T, 6> x1{}, x2{};
  if (order >= 1) x1 = p.coordinates(1);
  if (order >= 2) x2 = p.coordinates(2);

  OperatorValues<T> out{linalg::DenseMatrix<T>(6, 6), {}, linalg::DenseMatrix<T>(6, 6), linalg::DenseMatrix<T>(6, 6), linalg::DenseMatrix<T>(6, 6), order};
  for (std::size_t i = 0; i < 6; ++i) {
    const T s(kSign[i]);
    for (std::size_t j = 0; j < 6; ++j) {
      if (i == j) {
        out.H(i, j) = s * T(1 + kMask[j]);
        continue;
      }
      if (kMask[j] == 0) continue;
      out.H(i, j) = s * x[i] / x[j];
      if (order >= 1) out.H_prime(i, j) = s * (x1[i] / x[j] - x[i] * x1[j] / (x[j] * x[j]));
      if (order >= 2) {
        const T xj2 = x[j] * x[j];
        out.H_second(i, j) = s * (x2[i] / x[j] - T(2) * x1[i] * x1[j] / xj2 - x[i] * x2[j] / xj2 +
                                  T(2) * x[i] * x1[j] * x1[j] / (xj2 * x[j]));
      }
    }
  }
  out.H_squared = out.H * out.H;
  if (order >= 1) out.H_squared_prime = out.H_prime * out.H + out.H * out.H_prime;
  return out;
}

}  // namespace

const OperatorBundle& symbolic_bundle() {
  static const OperatorBundle bundle = [] {
    OperatorBundle b;
    b.H = tuple_ops::operator_from_external_det();
    b.H_squared = b.H * b.H;
    b.H_prime = symbolic::differentiate_t(b.H);
    b.H_second = symbolic::differentiate_t(b.H_prime);
    b.H_squared_prime = symbolic::differentiate_t(b.H_squared);
    return b;
  }();
  return bundle;
}

OperatorValues<double> evaluate_operators(const PointState<double>& p) { return evaluate_direct(p); }
OperatorValues<mpq_class> evaluate_operators(const PointState<mpq_class>& p) { return evaluate_direct(p); }

ExprVector omega1() {
  ExprVector out;
  for (int i = 1; i <= 3; ++i) out.push_back(RationalExpr::symbol(symbolic::u(i)));
  for (int i = 1; i <= 3; ++i) out.push_back(-RationalExpr::symbol(symbolic::v(i)));
  return out;
}

ExprVector omega2() {
  ExprVector out;
  for (int i = 1; i <= 3; ++i) out.push_back(RationalExpr::symbol(symbolic::u(i)));
  for (int i = 1; i <= 3; ++i) out.push_back(RationalExpr::symbol(symbolic::v(i)));
  return out;
}

}  // namespace epme::operator_h
