#include "epme/operator_h/pencil.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

#include "epme/linalg/bareiss.hpp"
#include "epme/symbolic/sampling.hpp"

namespace epme::operator_h {

namespace {

using linalg::QMatrix;
using linalg::QPoly;
using linalg::QVector;

QMatrix shifted(const QMatrix& a, const QMatrix& b, const mpq_class& lambda) {
  QMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) -= lambda * b(r, c);
  return out;
}

Eigen::MatrixXd to_dense(const QMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(static_cast<int>(r), static_cast<int>(c)) = m(r, c).get_d();
  return out;
}

// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = i;
  while (true) {
    out.push_back(s);
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + i - 1) --i;
    if (i == 0) return out;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

QPoly spectral_polynomial(const QMatrix& a, const QMatrix& b, std::size_t r) {
  std::vector<mpq_class> xs;
  std::vector<QMatrix> samples;
  for (std::size_t k = 0; k <= r; ++k) {
    xs.emplace_back(static_cast<long>(k));
    samples.push_back(shifted(a, b, xs.back()));
  }
  const std::size_t n = a.rows();
  if (r == n) {
    std::vector<mpq_class> ys;
    for (const auto& s : samples) ys.push_back(linalg::determinant(s));
    return QPoly::interpolate(xs, ys).monic();
  }
  QPoly g;
  const auto sets = subsets(n, r);
  for (const auto& rows : sets)
    for (const auto& cols : sets) {
      std::vector<mpq_class> ys;
      for (const auto& s : samples) ys.push_back(linalg::determinant(s.submatrix(rows, cols)));
      const QPoly minor = QPoly::interpolate(xs, ys);
      if (minor.is_zero()) continue;
      g = QPoly::gcd(g, minor);
      if (g.degree() == 0) return g;
    }
  return g;
}

double residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, std::complex<double> lambda, const Eigen::VectorXcd& z) {
  return ((a.cast<std::complex<double>>() - lambda * b.cast<std::complex<double>>()) * z).norm() / z.norm();
}

bool exact_eigenvector(const QMatrix& a, const QMatrix& b, const mpq_class& lambda, Eigen::VectorXcd& z) {
  for (const QVector& k : linalg::nullspace(shifted(a, b, lambda))) {
    const QVector bz = b * k;
    if (std::all_of(bz.begin(), bz.end(), [](const mpq_class& x) { return x == 0; })) continue;
    z.resize(static_cast<int>(k.size()));
    for (std::size_t i = 0; i < k.size(); ++i) z(static_cast<int>(i)) = k[i].get_d();
    z.normalize();
    return true;
  }
  return false;
}

// Near-null right singular vectors of A − λB, then the combination that B moves most.
bool numeric_eigenvector(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, std::complex<double> lambda,
                         std::size_t min_null, Eigen::VectorXcd& z) {
  const Eigen::MatrixXcd m = a.cast<std::complex<double>>() - lambda * b.cast<std::complex<double>>();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  const auto s = svd.singularValues();
  const int n = static_cast<int>(s.size());
  int null = 0;
  while (null < n && s(n - 1 - null) <= 1e-9 * std::max(1.0, s(0))) ++null;
  null = std::max(null, static_cast<int>(min_null));
  const Eigen::MatrixXcd basis = svd.matrixV().rightCols(null);
  const Eigen::MatrixXcd bn = b.cast<std::complex<double>>() * basis;
  Eigen::JacobiSVD<Eigen::MatrixXcd> inner(bn, Eigen::ComputeFullV);
  if (inner.singularValues()(0) <= 1e-9 * std::max(1.0, b.norm())) return false;
  z = (basis * inner.matrixV().col(0)).normalized();
  return true;
}

}  // namespace

PencilSolution pencil_solve(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != a.rows() || b.cols() != a.cols())
    throw std::invalid_argument("pencil matrices must be square and of equal size");
  PencilSolution out;
  out.size = a.rows();
  out.rank_a = linalg::rank(a);
  out.rank_b = linalg::rank(b);
  for (std::size_t k = 0; k < out.size + 2; ++k)
    out.normal_rank = std::max(out.normal_rank, linalg::rank(shifted(a, b, mpq_class(static_cast<long>(k)))));
  out.singular = out.normal_rank < out.size;
  if (out.normal_rank == 0) {
    out.spectral_polynomial = QPoly({mpq_class(1)});
    return out;
  }
  out.spectral_polynomial = spectral_polynomial(a, b, out.normal_rank);

  const Eigen::MatrixXd ad = to_dense(a), bd = to_dense(b);
  const std::size_t min_null = out.size - out.normal_rank + 1;

  QPoly rest = out.spectral_polynomial;
  for (const mpq_class& root : out.spectral_polynomial.rational_roots()) {
    PencilEigenpair pair;
    pair.exact_lambda = root;
    pair.lambda = root.get_d();
    pair.multiplicity = 0;
    const QPoly factor({-root, mpq_class(1)});
    while (rest.degree() > 0 && rest(root) == 0) {
      QPoly q, r;
      rest.divmod(factor, q, r);
      rest = q;
      ++pair.multiplicity;
    }
    if (!exact_eigenvector(a, b, root, pair.vector)) {
      ++out.degenerate_roots;
      continue;
    }
    pair.residual = residual(ad, bd, pair.lambda, pair.vector);
    out.finite.push_back(pair);
  }

  std::vector<PencilEigenpair> irrational;
  for (const auto& root : rest.roots()) {
    auto same = std::find_if(irrational.begin(), irrational.end(),
                             [&](const PencilEigenpair& p) { return std::abs(p.lambda - root) <= 1e-9 * std::max(1.0, std::abs(root)); });
    if (same != irrational.end()) {
      ++same->multiplicity;
      continue;
    }
    PencilEigenpair pair;
    pair.lambda = root;
    irrational.push_back(pair);
  }
  for (auto& pair : irrational) {
    if (!numeric_eigenvector(ad, bd, pair.lambda, min_null, pair.vector)) {
      ++out.degenerate_roots;
      continue;
    }
    pair.residual = residual(ad, bd, pair.lambda, pair.vector);
    out.finite.push_back(pair);
  }
  return out;
}

std::vector<std::complex<double>> qz_finite_eigenvalues(const Matrix6d& a, const Matrix6d& b, double tol) {
  Eigen::GeneralizedEigenSolver<Matrix6d> qz(a, b, false);
  if (qz.info() != Eigen::Success) throw SpectralError("QZ iteration did not converge");
  std::vector<std::complex<double>> out;
  for (int i = 0; i < 6; ++i) {
    const std::complex<double> alpha = qz.alphas()(i);
    const double beta = qz.betas()(i);
    if (std::abs(beta) <= tol * std::max(std::abs(alpha), std::abs(beta))) continue;
    out.push_back(alpha / beta);
  }
  std::sort(out.begin(), out.end(), [](auto x, auto y) { return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag(); });
  return out;
}

double lambda_formula(const PointState<double>& p) {
  const auto x = p.coordinates(0), dx = p.coordinates(1);
  const double u2 = x[1], u3 = x[2], v1 = x[3], v3 = x[5];
  return 5 * u2 * u3 * v1 * v3 / (u3 * v1 * v3 * dx[1] + dx[2] * u2 * v1 * v3 - dx[3] * u2 * u3 * v3 - dx[5] * u2 * u3 * v1);
}

PencilSignReport pencil_sign_report(const PointState<mpq_class>& p) {
  PointState<mpq_class> jet(std::max(p.max_order(), 1));
  for (int i = 1; i <= 3; ++i) {
    jet.set(symbolic::u(i), p.u_at(i)).set(symbolic::u(i, 1), p.u_at(i));
    jet.set(symbolic::v(i), p.v_at(i)).set(symbolic::v(i, 1), -p.v_at(i));
  }
  const auto ops = evaluate_operators(jet);
  const PencilSolution sol = pencil_solve(ops.H_squared, ops.H_prime);

  const auto x = jet.coordinates();
  Eigen::VectorXcd w1(6), w2(6);
  for (int i = 0; i < 6; ++i) {
    const double xi = x[static_cast<std::size_t>(i)].get_d();
    w1(i) = i < 3 ? xi : -xi;
    w2(i) = xi;
  }
  auto parallel = [](const Eigen::VectorXcd& z, const Eigen::VectorXcd& w) {
    return std::abs(z.dot(w)) >= (1 - 1e-9) * z.norm() * w.norm();
  };

  PencilSignReport out;
  out.formula = lambda_formula(symbolic::to_double(jet));
  out.lambda_omega1 = std::numeric_limits<double>::quiet_NaN();
  for (const auto& pair : sol.finite) {
    if (parallel(pair.vector, w1)) out.lambda_omega1 = pair.lambda.real();
    if (parallel(pair.vector, w2)) out.lambda_omega2 = pair.lambda.real();
  }
  const double tol = 1e-9 * std::max(1.0, std::abs(out.formula));
  out.magnitude_matches = std::abs(std::abs(out.lambda_omega1) - std::abs(out.formula)) <= tol;
  out.sign_matches = std::abs(out.lambda_omega1 - out.formula) <= tol;
  if (std::isnan(out.lambda_omega1))
    out.note = "no eigenvector parallel to (u,-v)";
  else if (out.sign_matches)
    out.note = "formula matches the (u,-v) eigenvalue";
  else if (out.magnitude_matches)
    out.note = "formula has the magnitude of the (u,-v) eigenvalue with the opposite sign; "
               "the formula's sign belongs to the other finite eigenvalue";
  else
    out.note = "formula magnitude differs from the (u,-v) eigenvalue";
  return out;
}

HigherPencilReport higher_pencil_scan(const std::vector<PointState<mpq_class>>& points, int max_p) {
  HigherPencilReport out;
  out.reduction_holds = true;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (points[k].max_order() < 2) throw std::invalid_argument("higher pencil scan needs jets of order 2");
    const auto ops = evaluate_operators(points[k]);
    QMatrix hp = QMatrix::identity(6);
    HigherPencilEntry base;
    for (int power = 0; power <= max_p; ++power) {
      const QMatrix a = ops.H_squared_prime * hp, b = ops.H_second * hp;
      const PencilSolution sol = pencil_solve(a, b);
      HigherPencilEntry e;
      e.point = k;
      e.power = power;
      e.normal_rank = sol.normal_rank;
      e.singular = sol.singular;
      e.spectral_polynomial = sol.spectral_polynomial;
      for (const auto& pair : sol.finite) {
        e.eigenvalues.push_back(pair.lambda);
        e.max_residual = std::max(e.max_residual, pair.residual);
      }
      if (power == 0) base = e;
      e.matches_reduced = e.normal_rank == base.normal_rank && e.spectral_polynomial == base.spectral_polynomial;
      out.reduction_holds = out.reduction_holds && e.matches_reduced;
      out.eigenpair_found = out.eigenpair_found || !sol.finite.empty();
      out.entries.push_back(std::move(e));
      hp = hp * ops.H;
    }
  }
  return out;
}

}  // namespace epme::operator_h
