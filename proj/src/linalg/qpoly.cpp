#include "epme/linalg/qpoly.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace epme::linalg {

QPoly::QPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpq_class QPoly::operator()(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<double> QPoly::operator()(std::complex<double> x) const {
  std::complex<double> acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

QPoly QPoly::operator-(const QPoly& o) const {
  std::vector<mpq_class> out(std::max(c_.size(), o.c_.size()), mpq_class(0));
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) out[i] -= o.c_[i];
  return QPoly(std::move(out));
}

QPoly QPoly::operator*(const QPoly& o) const {
  if (is_zero() || o.is_zero()) return QPoly();
  std::vector<mpq_class> out(c_.size() + o.c_.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  return QPoly(std::move(out));
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  std::vector<mpq_class> out = c_;
  const mpq_class lc = leading();
  for (auto& c : out) c /= lc;
  return QPoly(std::move(out));
}

void QPoly::divmod(const QPoly& divisor, QPoly& quotient, QPoly& remainder) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<mpq_class> rem = c_;
  const int dd = divisor.degree();
  std::vector<mpq_class> quo(std::max(0, degree() - dd + 1), mpq_class(0));
  for (int k = degree(); k >= dd; --k) {
    const mpq_class f = rem[static_cast<std::size_t>(k)] / divisor.leading();
    quo[static_cast<std::size_t>(k - dd)] = f;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k - dd + j)] -= f * divisor.c_[static_cast<std::size_t>(j)];
  }
  quotient = QPoly(std::move(quo));
  rem.resize(static_cast<std::size_t>(std::max(0, dd)));
  remainder = QPoly(std::move(rem));
}

QPoly QPoly::derivative() const {
  if (c_.size() <= 1) return QPoly();
  std::vector<mpq_class> out(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * static_cast<long>(i);
  return QPoly(std::move(out));
}

QPoly QPoly::gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.is_zero()) {
    QPoly q, r;
    x.divmod(y, q, r);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

QPoly QPoly::interpolate(const std::vector<mpq_class>& xs, const std::vector<mpq_class>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("interpolation size mismatch");
  // Newton divided differences.
  const std::size_t n = xs.size();
  std::vector<mpq_class> dd = ys;
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
      if (i == level) break;
    }
  QPoly result;
  for (std::size_t k = n; k-- > 0;) {
    // result = result * (x - xs[k]) + dd[k]
    result = result * QPoly({-xs[k], mpq_class(1)});
    std::vector<mpq_class> c = result.c_;
    if (c.empty()) c.push_back(0);
    c[0] += dd[k];
    result = QPoly(std::move(c));
  }
  return result;
}

bool rational_sqrt(const mpq_class& x, mpq_class& root) {
  if (x < 0) return false;
  mpz_class n = x.get_num(), d = x.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  root = mpq_class(rn, rd);
  root.canonicalize();
  return true;
}

std::vector<mpq_class> QPoly::rational_roots() const {
  std::vector<mpq_class> out;
  if (degree() == 1) {
    out.push_back(-c_[0] / c_[1]);
  } else if (degree() == 2) {
    const mpq_class disc = c_[1] * c_[1] - 4 * c_[2] * c_[0];
    mpq_class s;
    if (rational_sqrt(disc, s)) {
      mpq_class r1 = (-c_[1] - s) / (2 * c_[2]);
      mpq_class r2 = (-c_[1] + s) / (2 * c_[2]);
      r1.canonicalize();
      r2.canonicalize();
      out.push_back(r1);
      if (r2 != r1) out.push_back(r2);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::complex<double>> QPoly::roots() const {
  const int n = degree();
  std::vector<std::complex<double>> out;
  if (n <= 0) return out;
  if (n == 1) {
    out.emplace_back(mpq_class(-c_[0] / c_[1]).get_d(), 0.0);
    return out;
  }
  if (n == 2) {
    // Exact discriminant keeps the real/complex split reliable.
    const mpq_class disc = c_[1] * c_[1] - 4 * c_[2] * c_[0];
    const double a = c_[2].get_d(), b = c_[1].get_d();
    if (disc >= 0) {
      const double s = std::sqrt(disc.get_d());
      const double q = -0.5 * (b + (b >= 0 ? s : -s));
      if (q == 0.0) {
        out.emplace_back(0.0, 0.0);
        out.emplace_back(0.0, 0.0);
      } else {
        out.emplace_back(q / a, 0.0);
        out.emplace_back(c_[0].get_d() / q, 0.0);
      }
    } else {
      const double s = std::sqrt(-disc.get_d());
      out.emplace_back(-b / (2 * a), s / (2 * a));
      out.emplace_back(-b / (2 * a), -s / (2 * a));
    }
    return out;
  }
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -mpq_class(c_[static_cast<std::size_t>(i)] / leading()).get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
  for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

std::string QPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    mpq_class c = c_[i];
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    if (c < 0) c = -c;
    if (i == 0 || c != 1) os << c.get_str() << (i > 0 ? "*" : "");
    if (i >= 1) os << var;
    if (i > 1) os << "^" << i;
    first = false;
  }
  return os.str();
}

}  // namespace epme::linalg
