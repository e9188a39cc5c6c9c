#pragma once

#include <Eigen/Core>

#include <array>

#include "epme/pathwise/trajectory.hpp"

namespace epme::pathwise {

using Matrix65 = Eigen::Matrix<double, 6, 5>;
using Matrix66 = Eigen::Matrix<double, 6, 6>;

struct SectionGeometry {
  Matrix65 N;
  std::array<double, 5> varpi{};
  /// e = Σ ϖ_j N_j and p = H e.
  Vec6 e{}, p{};
  /// | |e| − |p| | / |e|.
  double norm_gap = 0;
  int rank_N = 0;

  double gamma1 = 0, gamma2 = 0;
  Vec6 delta{};
  /// E = [N | δ(γ1, γ2)].
  Matrix66 E;
  double detE = 0;
  /// −32 (γ2 u3 + γ1 v3) v2 v1 u2 u1.
  double detE_closed_form = 0;

  /// γ1 = θ u3, γ2 = −θ v3, which makes δ = θ (u, −v).
  double theta = 0;
  Vec6 delta_theta{};
  double detE_theta = 0;
  /// Product of the column norms of the θ matrix, the scale for detE_theta.
  double hadamard_theta = 0;
  /// |H² δ − 5 δ| / |δ| for the θ vector.
  double eigen_residual = 0;
};

/// Columns span the vectors whose image under H keeps their length.
Matrix65 n_matrix(const symbolic::PointState<double>& p);

/// (γ1 u1/u3, γ1 u2/u3, γ1, γ2 v1/v3, γ2 v2/v3, γ2).
Vec6 delta_vector(const symbolic::PointState<double>& p, double gamma1, double gamma2);

double det_e_closed_form(const symbolic::PointState<double>& p, double gamma1, double gamma2);

/// Throws std::invalid_argument on a zero coordinate, an all-zero ϖ or a zero γ or θ.
SectionGeometry section_geometry(const symbolic::PointState<double>& p, const std::array<double, 5>& varpi,
                                 double gamma1, double gamma2, double theta = 1);

}  // namespace epme::pathwise
