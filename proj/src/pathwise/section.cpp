#include "epme/pathwise/section.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

#include "epme/operator_h/operators.hpp"

namespace epme::pathwise {

namespace {

Eigen::Matrix<double, 6, 1> to_v(const Vec6& a) { return Eigen::Map<const Eigen::Matrix<double, 6, 1>>(a.data()); }

Vec6 to_a(const Eigen::Matrix<double, 6, 1>& v) {
  Vec6 a;
  Eigen::Map<Eigen::Matrix<double, 6, 1>>(a.data()) = v;
  return a;
}

Matrix66 to_mat(const linalg::DenseMatrix<double>& m) {
  Matrix66 out;
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c) out(static_cast<int>(r), static_cast<int>(c)) = m(r, c);
  return out;
}

double product_of_column_norms(const Matrix66& m) {
  double prod = 1;
  for (int c = 0; c < 6; ++c) prod *= m.col(c).norm();
  return prod;
}

}  // namespace

Matrix65 n_matrix(const symbolic::PointState<double>& p) {
  const double u1 = p.u_at(1), u2 = p.u_at(2), u3 = p.u_at(3);
  const double v1 = p.v_at(1), v2 = p.v_at(2), v3 = p.v_at(3);
  Matrix65 n;
  n << u1, u1, u1, -u1, u1,
      -u2, u2, -u2, -u2, -u2,
      u3, u3, u3, u3, u3,
      v1, -v1, -v1, -v1, -v1,
      -v2, -v2, v2, v2, -v2,
      -v3, -v3, v3, v3, v3;
  return n;
}

Vec6 delta_vector(const symbolic::PointState<double>& p, double gamma1, double gamma2) {
  return {gamma1 * p.u_at(1) / p.u_at(3), gamma1 * p.u_at(2) / p.u_at(3), gamma1,
          gamma2 * p.v_at(1) / p.v_at(3), gamma2 * p.v_at(2) / p.v_at(3), gamma2};
}

double det_e_closed_form(const symbolic::PointState<double>& p, double gamma1, double gamma2) {
  return -32 * (gamma2 * p.u_at(3) + gamma1 * p.v_at(3)) * p.v_at(2) * p.v_at(1) * p.u_at(2) * p.u_at(1);
}

SectionGeometry section_geometry(const symbolic::PointState<double>& p, const std::array<double, 5>& varpi,
                                 double gamma1, double gamma2, double theta) {
  if (!p.coordinates_nonzero()) throw std::invalid_argument("section geometry needs nonzero coordinates");
  bool any = false;
  for (double w : varpi) any = any || w != 0;
  if (!any) throw std::invalid_argument("varpi must not vanish");
  if (gamma1 == 0 || gamma2 == 0 || theta == 0) throw std::invalid_argument("gamma and theta must be nonzero");

  SectionGeometry g;
  const Matrix66 h = to_mat(operator_h::evaluate_operators(symbolic::PointState<double>::from_uv(
                                {p.u_at(1), p.u_at(2), p.u_at(3)}, {p.v_at(1), p.v_at(2), p.v_at(3)}))
                                .H);
  g.N = n_matrix(p);
  g.varpi = varpi;
  g.rank_N = static_cast<int>(Eigen::FullPivLU<Matrix65>(g.N).rank());
  const Eigen::Matrix<double, 6, 1> e = g.N * Eigen::Map<const Eigen::Matrix<double, 5, 1>>(varpi.data());
  const Eigen::Matrix<double, 6, 1> hp = h * e;
  g.e = to_a(e);
  g.p = to_a(hp);
  g.norm_gap = std::abs(e.norm() - hp.norm()) / e.norm();

  g.gamma1 = gamma1;
  g.gamma2 = gamma2;
  g.delta = delta_vector(p, gamma1, gamma2);
  g.E << g.N, to_v(g.delta);
  g.detE = g.E.determinant();
  g.detE_closed_form = det_e_closed_form(p, gamma1, gamma2);

  g.theta = theta;
  g.delta_theta = delta_vector(p, theta * p.u_at(3), -theta * p.v_at(3));
  Matrix66 et;
  et << g.N, to_v(g.delta_theta);
  g.detE_theta = et.determinant();
  g.hadamard_theta = product_of_column_norms(et);
  const auto d = to_v(g.delta_theta);
  g.eigen_residual = (h * (h * d) - 5 * d).norm() / d.norm();
  return g;
}

}  // namespace epme::pathwise
