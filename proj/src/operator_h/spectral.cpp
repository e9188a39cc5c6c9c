#include "epme/operator_h/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "epme/operator_h/displays.hpp"
#include "epme/symbolic/parser.hpp"

namespace epme::operator_h {

Matrix6d to_eigen(const linalg::DenseMatrix<double>& m) {
  if (m.rows() != 6 || m.cols() != 6) throw std::invalid_argument("expected a 6x6 matrix");
  Matrix6d out;
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c) out(static_cast<int>(r), static_cast<int>(c)) = m(r, c);
  return out;
}

SpectralResult eigen(const Matrix6d& a) {
  Eigen::EigenSolver<Matrix6d> solver(a, true);
  if (solver.info() != Eigen::Success) throw SpectralError("eigensolver did not converge");
  const auto values = solver.eigenvalues();
  const auto vectors = solver.eigenvectors();

  std::vector<int> order(6);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (values(x).real() != values(y).real()) return values(x).real() < values(y).real();
    return values(x).imag() < values(y).imag();
  });

  SpectralResult out;
  out.eigenvectors.resize(6, 6);
  const Eigen::MatrixXcd ac = a.cast<std::complex<double>>();
  for (int k = 0; k < 6; ++k) {
    const int i = order[static_cast<std::size_t>(k)];
    const Eigen::VectorXcd v = vectors.col(i).normalized();
    out.eigenvalues.push_back(values(i));
    out.eigenvectors.col(k) = v;
    out.residual_norms.push_back((ac * v - values(i) * v).norm());
  }
  return out;
}

std::size_t eigenspace_dimension(const Matrix6d& a, double lambda, double rel_tol) {
  const Matrix6d shifted = a - lambda * Matrix6d::Identity();
  const double scale = Eigen::JacobiSVD<Matrix6d>(a).singularValues()(0);
  const auto s = Eigen::JacobiSVD<Matrix6d>(shifted).singularValues();
  std::size_t rank = 0;
  for (int i = 0; i < 6; ++i) rank += s(i) > rel_tol * scale;
  return 6 - rank;
}

double eigen_residual(const Matrix6d& a, double lambda, const Vector6d& v) {
  return (a * v - lambda * v).norm() / v.norm();
}

SingularValues svd_numeric(const Matrix6d& h) {
  const auto s = Eigen::JacobiSVD<Matrix6d>(h).singularValues();
  SingularValues out;
  for (int i = 0; i < 6; ++i) out.sigma[static_cast<std::size_t>(i)] = s(i);
  out.reading = "numeric";
  return out;
}

double b_value(const PointState<double>& p) {
  static const RationalExpr b = symbolic::parse_rational(b_expression());
  return symbolic::evaluate(b, p);
}

namespace {

bool close(double x, double y, double rel_tol) { return std::abs(x - y) <= rel_tol * std::max(std::abs(x), std::abs(y)); }

// Fills sigma from (b ± q) / (2 d²); false when either square is negative or the extremes
// disagree with the numeric ones.
bool extremes_from(double b, double q, double d, const SingularValues& numeric, double rel_tol, SingularValues& out) {
  const double hi = (b + q) / (2 * d * d), lo = (b - q) / (2 * d * d);
  if (!(hi >= 0 && lo >= 0)) return false;
  out.sigma = {std::sqrt(hi), 1, 1, 1, 1, std::sqrt(lo)};
  return close(out.sigma[0], numeric.sigma[0], rel_tol) && close(out.sigma[5], numeric.sigma[5], rel_tol);
}

}  // namespace

SingularValues svd_closed_form(const PointState<double>& p, double rel_tol) {
  static const RationalExpr radicand = symbolic::parse_rational(q_radicand_expression());
  const SingularValues numeric = svd_numeric(to_eigen(evaluate_operators(p).H));
  const auto x = p.coordinates();
  const double d = x[1] * x[2] * x[3] * x[5];

  SingularValues out;
  out.b_value = b_value(p);
  out.q_printed_radicand = symbolic::evaluate(radicand, p);

  if (out.q_printed_radicand >= 0) {
    out.q_value = std::sqrt(out.q_printed_radicand);
    if (extremes_from(out.b_value, out.q_value, d, numeric, rel_tol, out)) {
      out.reading = "printed";
      return out;
    }
    out.note = "printed q disagrees with the numeric SVD";
  } else {
    out.note = "printed q radicand is negative";
  }

  out.q_value = std::sqrt(std::max(0.0, out.b_value * out.b_value - 100 * d * d * d * d));
  if (extremes_from(out.b_value, out.q_value, d, numeric, rel_tol, out)) {
    out.reading = "derived";
    out.note += "; q from b^2 - q^2 = 100 d^4 agrees";
    return out;
  }
  out.sigma = numeric.sigma;
  out.reading = "numeric";
  out.note += "; derived q disagrees too, numeric values reported";
  return out;
}

}  // namespace epme::operator_h
