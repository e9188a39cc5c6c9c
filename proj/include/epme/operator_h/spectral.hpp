#pragma once

#include <Eigen/Core>

#include <array>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "epme/operator_h/operators.hpp"

namespace epme::operator_h {

using Matrix6d = Eigen::Matrix<double, 6, 6>;
using Vector6d = Eigen::Matrix<double, 6, 1>;

class SpectralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Matrix6d to_eigen(const linalg::DenseMatrix<double>& m);

struct SpectralResult {
  /// Sorted by real part, then imaginary part.
  std::vector<std::complex<double>> eigenvalues;
  /// Unit columns, in eigenvalue order.
  Eigen::MatrixXcd eigenvectors;
  /// ‖Av − λv‖ per pair.
  std::vector<double> residual_norms;
};

/// Throws SpectralError when the QR iteration does not converge.
SpectralResult eigen(const Matrix6d& a);

/// 6 − rank(A − λI), the rank taken by singular values above rel_tol · σ_max(A).
std::size_t eigenspace_dimension(const Matrix6d& a, double lambda, double rel_tol = 1e-8);

/// ‖Av − λv‖ / ‖v‖.
double eigen_residual(const Matrix6d& a, double lambda, const Vector6d& v);

struct SingularValues {
  /// Descending.
  std::array<double, 6> sigma{};
  double b_value = std::numeric_limits<double>::quiet_NaN();
  double q_value = std::numeric_limits<double>::quiet_NaN();
  /// The printed radicand of q at the point, whatever its sign.
  double q_printed_radicand = std::numeric_limits<double>::quiet_NaN();
  /// Where sigma came from: "printed" q, "derived" q (q² = b² − 100 d⁴, d = u2u3v1v3), or
  /// "numeric" (svd_numeric, or no closed form agreed).
  std::string reading;
  std::string note;
};

SingularValues svd_numeric(const Matrix6d& h);

/// σ² = (b ± q) / (2 d²). The printed q is tried first; when it disagrees with the numeric
/// SVD beyond rel_tol the derived q is tried, and the outcome is recorded in `reading`.
SingularValues svd_closed_form(const PointState<double>& p, double rel_tol = 1e-8);

/// b as printed, at a point.
double b_value(const PointState<double>& p);

}  // namespace epme::operator_h
