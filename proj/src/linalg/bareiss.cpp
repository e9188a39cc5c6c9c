#include "epme/linalg/bareiss.hpp"

namespace epme::linalg {

QVector operator*(const QMatrix& a, const QVector& x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matrix-vector shape mismatch");
  QVector out(a.rows(), mpq_class(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * x[j];
  return out;
}

ZMatrix clear_denominators(const QMatrix& m, mpq_class* det_scale) {
  ZMatrix out(m.rows(), m.cols());
  mpq_class scale = 1;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < m.cols(); ++c) {
      mpq_class v = m(r, c) * l;
      out(r, c) = v.get_num();
    }
    scale *= l;
  }
  if (det_scale) *det_scale = scale;
  return out;
}

std::size_t rank(const QMatrix& m) { return bareiss(clear_denominators(m), IntegerOps{}).rank; }

mpq_class determinant(const QMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  mpq_class scale;
  ZMatrix z = clear_denominators(m, &scale);
  mpq_class det(bareiss(std::move(z), IntegerOps{}).determinant);
  det /= scale;
  det.canonicalize();
  return det;
}

std::vector<QVector> nullspace(const QMatrix& m) {
  QMatrix a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    a.swap_rows(p, r);
    const mpq_class inv = 1 / a(r, c);
    for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      const mpq_class f = a(i, c);
      for (std::size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    QVector x(cols, mpq_class(0));
    x[free] = 1;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) x[pivot_cols[k]] = -a(k, free);
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace epme::linalg
