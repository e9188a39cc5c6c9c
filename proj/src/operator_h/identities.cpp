#include "epme/operator_h/identities.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "epme/operator_h/pencil.hpp"
#include "epme/operator_h/spectral.hpp"
#include "epme/symbolic/parser.hpp"
#include "epme/symbolic/sampling.hpp"
#include "epme/tuple_ops/tuple_ops.hpp"

namespace epme::operator_h {

namespace {

using symbolic::Symbol;

std::string entry_detail(std::size_t r, std::size_t c, const RationalExpr& got, const RationalExpr& want) {
  return "entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + "): got " + got.to_string() +
         ", expected " + want.to_string();
}

IdentityCheck matrix_check(std::string id, std::string statement, const ExprMatrix& got, const ExprMatrix& want) {
  IdentityCheck out{std::move(id), std::move(statement), true, "", 0};
  if (const auto m = symbolic::first_mismatch(got, want)) {
    out.passed = false;
    out.detail = entry_detail(m->row, m->col, got(m->row, m->col), want(m->row, m->col));
  }
  return out;
}

IdentityCheck vector_check(std::string id, std::string statement, const ExprVector& got, const ExprVector& want) {
  IdentityCheck out{std::move(id), std::move(statement), true, "", 0};
  if (const auto m = symbolic::first_mismatch(got, want)) {
    out.passed = false;
    out.detail = "component " + std::to_string(*m + 1) + ": got " + got[*m].to_string() + ", expected " +
                 want[*m].to_string();
  }
  return out;
}

// u_i' -> su·u_i, v_i' -> sv·v_i.
std::map<Symbol, RationalExpr> exponential_jet(long su, long sv) {
  std::map<Symbol, RationalExpr> out;
  for (int i = 1; i <= 3; ++i) {
    out[symbolic::u(i, 1)] = RationalExpr(su) * RationalExpr::symbol(symbolic::u(i));
    out[symbolic::v(i, 1)] = RationalExpr(sv) * RationalExpr::symbol(symbolic::v(i));
  }
  return out;
}

}  // namespace

std::vector<IdentityCheck> verify_identity_suite(const OperatorBundle& b) {
  const ExprVector w1 = omega1(), w2 = omega2();
  std::vector<IdentityCheck> out;
  out.push_back(vector_check("H_omega1", "H(u,-v) = (u,v)", symbolic::apply(b.H, w1), w2));
  out.push_back(vector_check("H2_omega1", "H^2(u,-v) = 5(u,-v)", symbolic::apply(b.H_squared, w1), symbolic::scaled(w1, 5)));
  out.push_back(vector_check("H_omega2", "H(u,v) = (5u,-5v)", symbolic::apply(b.H, w2), symbolic::scaled(w1, 5)));
  out.push_back(vector_check("H2_omega2", "H^2(u,v) = 5(u,v)", symbolic::apply(b.H_squared, w2), symbolic::scaled(w2, 5)));
  out.push_back(matrix_check("H_times_H", "H*H = printed H^2", b.H * b.H, to_matrix(h_squared_display())));

  IdentityCheck dh = matrix_check("dH_dt", "d/dt H = printed H'", symbolic::differentiate_t(b.H), to_matrix(h_prime_display()));
  if (dh.passed) dh.detail = std::to_string(errata().size()) + " printed entry corrected";
  out.push_back(dh);

  const tuple_ops::ExternalDet det = tuple_ops::external_det(1);
  ExprMatrix jac(6, 6), scaled_h(6, 6);
  for (std::size_t m = 0; m < 6; ++m)
    for (std::size_t j = 0; j < 6; ++j) {
      const Symbol x = j < 3 ? symbolic::u(static_cast<int>(j) + 1) : symbolic::v(static_cast<int>(j) - 2);
      jac(m, j) = symbolic::partial(det.vector6[m], x);
      scaled_h(m, j) = det.factor * b.H(m, j);
    }
  IdentityCheck ext = matrix_check("external_det", "grad det(D) = u2u3v1v3 H, H = printed H", jac, scaled_h);
  if (ext.passed) ext = matrix_check(ext.id, ext.statement, b.H, to_matrix(h_display()));
  out.push_back(ext);
  return out;
}

std::vector<IdentityCheck> verify_jet_identities(const OperatorBundle& b) {
  const ExprVector w1 = omega1(), w2 = omega2();
  std::vector<IdentityCheck> out;

  const auto jet1 = exponential_jet(1, -1);
  const ExprMatrix hp1 = symbolic::substitute(b.H_prime, jet1);
  out.push_back(vector_check("jet1_Hprime", "u'=u, v'=-v: H'(u,-v) = -4(u,-v)", symbolic::apply(hp1, w1), symbolic::scaled(w1, -4)));
  out.push_back(vector_check("jet1_split", "u'=u, v'=-v: (H'+H^2)(u,-v) = (u,-v)", symbolic::apply(hp1 + b.H_squared, w1), w1));

  const auto jet5 = exponential_jet(5, -5);
  const ExprMatrix hp5 = symbolic::substitute(b.H_prime, jet5);
  out.push_back(vector_check("jet5_Hprime", "u'=5u, v'=-5v: H'(u,v) = 20(u,v)", symbolic::apply(hp5, w2), symbolic::scaled(w2, 20)));
  out.push_back(vector_check("jet5_split", "u'=5u, v'=-5v: (H'+H^2)(u,v) = 25(u,v)", symbolic::apply(hp5 + b.H_squared, w2), symbolic::scaled(w2, 25)));
  return out;
}

std::vector<ErratumCheck> check_errata(const OperatorBundle& b) {
  std::vector<ErratumCheck> out;
  for (const Erratum& e : errata()) {
    const ExprMatrix& target = e.display == "H'" ? b.H_prime : b.H;
    const RationalExpr& actual = target(e.row - 1, e.col - 1);
    out.push_back({e, symbolic::equals(symbolic::parse_rational(e.printed), actual),
                   symbolic::equals(symbolic::parse_rational(e.corrected), actual)});
  }
  return out;
}

namespace {

struct Tally {
  IdentityCheck check;

  void record(std::size_t point, double deviation, bool ok, const std::string& what) {
    check.worst = std::max(check.worst, deviation);
    if (!ok && check.passed) {
      check.passed = false;
      check.detail = "point " + std::to_string(point) + ": " + what;
    }
  }
};

Tally tally(std::string id, std::string statement) { return Tally{IdentityCheck{std::move(id), std::move(statement), true, "", 0}}; }

double spectrum_deviation(const std::vector<std::complex<double>>& got, const std::array<double, 6>& want) {
  double dev = 0;
  for (std::size_t i = 0; i < 6; ++i) dev = std::max(dev, std::abs(got[i] - want[i]));
  return dev;
}

mpq_class trace(const linalg::QMatrix& m) {
  mpq_class t = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

}  // namespace

std::vector<IdentityCheck> verify_numeric_suite(const std::vector<PointState<mpq_class>>& points, const Tolerances& tol) {
  const double s5 = std::sqrt(5.0);
  const std::array<double, 6> h_spectrum = {-s5, -1, -1, 1, 1, s5};
  const std::array<double, 6> h2_spectrum = {1, 1, 1, 1, 5, 5};

  Tally h_eig = tally("H_eigenvalues", "eigenvalues of H are (-sqrt5,-1,-1,1,1,sqrt5)");
  Tally h2_eig = tally("H2_eigenvalues", "eigenvalues of H^2 are (1,1,1,1,5,5)");
  Tally spaces = tally("H2_eigenspaces", "dim E5(H^2) = 2 containing (u,-v) and (u,v); dim E1(H^2) = 4");
  Tally det = tally("det_H", "|det H| = 5");
  Tally traces = tally("traces", "trace H = 0 and trace H^2 = 14 exactly");
  Tally sv = tally("singular_values", "sigma = (smax,1,1,1,1,smin), smax*smin = 5, smax > 1 > smin");
  Tally frob = tally("frobenius", "|H|_F^2 = smax^2 + smin^2 + 4");
  Tally closed = tally("svd_closed_form", "closed-form extremes agree with the numeric SVD");
  Tally pencil = tally("pencil_H2_Hprime", "(H^2, H') has rank(H') = 2 and exactly 2 finite eigenpairs");
  std::size_t printed = 0, derived = 0;

  for (std::size_t k = 0; k < points.size(); ++k) {
    const PointState<mpq_class>& p = points[k];
    const PointState<double> pd = symbolic::to_double(p);
    const auto exact = evaluate_operators(p);
    const auto num = evaluate_operators(pd);
    const Matrix6d h = to_eigen(num.H), h2 = to_eigen(num.H_squared);

    const double dh = spectrum_deviation(eigen(h).eigenvalues, h_spectrum);
    h_eig.record(k, dh, dh <= tol.eigenvalue, "eigenvalue deviation " + fmt(dh));
    const double dh2 = spectrum_deviation(eigen(h2).eigenvalues, h2_spectrum);
    h2_eig.record(k, dh2, dh2 <= tol.eigenvalue, "eigenvalue deviation " + fmt(dh2));

    Vector6d w1, w2;
    const auto x = pd.coordinates();
    for (int i = 0; i < 6; ++i) {
      w2(i) = x[static_cast<std::size_t>(i)];
      w1(i) = i < 3 ? w2(i) : -w2(i);
    }
    const std::size_t dim5 = eigenspace_dimension(h2, 5, tol.spectral), dim1 = eigenspace_dimension(h2, 1, tol.spectral);
    const double res = std::max(eigen_residual(h2, 5, w1), eigen_residual(h2, 5, w2));
    spaces.record(k, res, dim5 == 2 && dim1 == 4 && res <= tol.spectral,
                  "dims " + std::to_string(dim5) + "," + std::to_string(dim1) + ", residual " + fmt(res));

    const double ddet = std::abs(std::abs(h.determinant()) - 5);
    det.record(k, ddet, ddet <= tol.determinant, "|det H| - 5 = " + fmt(ddet));

    const bool tr = trace(exact.H) == 0 && trace(exact.H_squared) == 14;
    traces.record(k, tr ? 0 : 1, tr, "trace H = " + trace(exact.H).get_str() + ", trace H^2 = " + trace(exact.H_squared).get_str());

    const SingularValues s = svd_numeric(h);
    double dmid = 0;
    for (std::size_t i = 1; i <= 4; ++i) dmid = std::max(dmid, std::abs(s.sigma[i] - 1));
    const double dprod = std::abs(s.sigma[0] * s.sigma[5] - 5);
    sv.record(k, std::max(dmid, dprod), dmid <= tol.spectral && dprod <= tol.spectral && s.sigma[0] > 1 && s.sigma[5] < 1,
              "middle deviation " + fmt(dmid) + ", product deviation " + fmt(dprod));

    const double dfrob = std::abs(h.squaredNorm() - (s.sigma[0] * s.sigma[0] + s.sigma[5] * s.sigma[5] + 4));
    frob.record(k, dfrob, dfrob <= tol.spectral, "deviation " + fmt(dfrob));

    const SingularValues c = svd_closed_form(pd, tol.spectral);
    printed += c.reading == "printed";
    derived += c.reading == "derived";
    closed.record(k, 0, c.reading != "numeric", c.note);

    const PencilSolution sol = pencil_solve(exact.H_squared, exact.H_prime);
    double worst_res = 0;
    for (const auto& pair : sol.finite) worst_res = std::max(worst_res, pair.residual);
    const auto qz = qz_finite_eigenvalues(h2, to_eigen(num.H_prime));
    bool qz_agrees = qz.size() == sol.finite.size();
    for (const auto& pair : sol.finite)
      qz_agrees = qz_agrees && std::any_of(qz.begin(), qz.end(), [&](std::complex<double> z) {
                    return std::abs(z - pair.lambda) <= 1e-6 * std::max(1.0, std::abs(pair.lambda));
                  });
    pencil.record(k, worst_res,
                  sol.rank_b == 2 && !sol.singular && sol.finite.size() == 2 && worst_res <= tol.residual && qz_agrees,
                  "rank(H') = " + std::to_string(sol.rank_b) + ", " + std::to_string(sol.finite.size()) +
                      " finite eigenpairs, residual " + fmt(worst_res) + (qz_agrees ? "" : ", QZ disagrees"));
  }
  if (closed.check.passed)
    closed.check.detail = "printed q at " + std::to_string(printed) + " points, derived q at " + std::to_string(derived);

  return {h_eig.check, h2_eig.check, spaces.check, det.check, traces.check, sv.check, frob.check, closed.check, pencil.check};
}

}  // namespace epme::operator_h
