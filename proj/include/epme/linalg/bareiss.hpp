#pragma once

#include <cstddef>
#include <limits>

#include "epme/linalg/dense_matrix.hpp"

namespace epme::linalg {

template <class R>
struct BareissResult {
  std::size_t rank = 0;
  /// Determinant when the matrix is square and of full rank, zero otherwise.
  R determinant{};
};

/// Fraction-free Gaussian elimination with full pivoting over an integral domain.
///
/// Ops supplies `is_zero(x)`, `exact_div(a, b)` (b divides a), `weight(x)` (pivot cost,
/// smaller preferred) and `zero()`, `one()`. Every intermediate entry stays in the ring:
/// after step k the trailing block holds (k+1)x(k+1) minors of the input.
template <class R, class Ops>
BareissResult<R> bareiss(DenseMatrix<R> a, const Ops& ops) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const std::size_t steps = rows < cols ? rows : cols;
  R prev = ops.one();
  int sign = 1;
  std::size_t rank = 0;
  for (std::size_t k = 0; k < steps; ++k) {
    std::size_t pr = rows, pc = cols;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < cols; ++j) {
        if (ops.is_zero(a(i, j))) continue;
        const std::size_t w = ops.weight(a(i, j));
        if (w < best) {
          best = w;
          pr = i;
          pc = j;
        }
      }
    if (pr == rows) break;
    if (pr != k) {
      a.swap_rows(pr, k);
      sign = -sign;
    }
    if (pc != k) {
      a.swap_cols(pc, k);
      sign = -sign;
    }
    ++rank;
    for (std::size_t i = k + 1; i < rows; ++i) {
      for (std::size_t j = k + 1; j < cols; ++j)
        a(i, j) = ops.exact_div(a(k, k) * a(i, j) - a(i, k) * a(k, j), prev);
      a(i, k) = ops.zero();
    }
    prev = a(k, k);
  }
  BareissResult<R> out;
  out.rank = rank;
  if (rows == cols && rank == rows && rows > 0) {
    out.determinant = sign > 0 ? prev : ops.negate(prev);
  } else if (rows == 0 && cols == 0) {
    out.determinant = ops.one();
  } else {
    out.determinant = ops.zero();
  }
  return out;
}

struct IntegerOps {
  static bool is_zero(const mpz_class& x) { return x == 0; }
  static mpz_class exact_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }
  static std::size_t weight(const mpz_class& x) { return mpz_sizeinbase(x.get_mpz_t(), 2); }
  static mpz_class zero() { return 0; }
  static mpz_class one() { return 1; }
  static mpz_class negate(const mpz_class& x) { return -x; }
};

/// Row-scales a rational matrix to integers; rank is unchanged, the determinant picks up
/// the product of the scale factors.
ZMatrix clear_denominators(const QMatrix& m, mpq_class* det_scale = nullptr);

std::size_t rank(const QMatrix& m);
mpq_class determinant(const QMatrix& m);
/// Basis of the right null space, computed by exact reduced row echelon form.
std::vector<QVector> nullspace(const QMatrix& m);

}  // namespace epme::linalg
