#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "epme/linalg/bareiss.hpp"
#include "epme/linalg/qpoly.hpp"

using namespace epme::linalg;

namespace {

// Plain rational Gaussian elimination, used as an independent rank and determinant oracle.
std::pair<std::size_t, mpq_class> gauss_oracle(QMatrix m) {
  std::size_t rank = 0;
  mpq_class det = 1;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t p = rank;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) {
      det = 0;
      continue;
    }
    if (p != rank) {
      m.swap_rows(p, rank);
      det = -det;
    }
    det *= m(rank, c);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      const mpq_class f = m(r, c) / m(rank, c);
      for (std::size_t k = c; k < m.cols(); ++k) m(r, k) -= f * m(rank, k);
    }
    ++rank;
  }
  if (m.rows() != m.cols() || rank < m.rows()) det = 0;
  return {rank, det};
}

QMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::size_t rank) {
  QMatrix a(rows, rank), b(rank, cols);
  auto q = [&] {
    mpq_class x(static_cast<long>(rng() % 19) - 9, 1 + rng() % 4);
    x.canonicalize();
    return x;
  };
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < rank; ++j) a(i, j) = q();
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < cols; ++j) b(i, j) = q();
  return a * b;
}

}  // namespace

TEST(Bareiss, MatchesGaussianOracle) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
    const std::size_t r = rng() % (std::min(rows, cols) + 1);
    const QMatrix m = random_matrix(rng, rows, cols, r);
    const auto [orank, odet] = gauss_oracle(m);
    EXPECT_EQ(rank(m), orank);
    if (rows == cols) {
      EXPECT_EQ(determinant(m), odet);
    }
  }
}

TEST(Bareiss, IntegerDeterminant) {
  ZMatrix m(3, 3);
  const long v[9] = {2, -1, 0, -1, 2, -1, 0, -1, 2};
  for (int k = 0; k < 9; ++k) m(static_cast<std::size_t>(k / 3), static_cast<std::size_t>(k % 3)) = v[k];
  const auto r = bareiss(m, IntegerOps{});
  EXPECT_EQ(r.rank, 3u);
  EXPECT_EQ(r.determinant, 4);
}

TEST(Nullspace, VectorsAreAnnihilatedAndIndependent) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
    const QMatrix m = random_matrix(rng, rows, cols, rng() % (std::min(rows, cols) + 1));
    const auto basis = nullspace(m);
    EXPECT_EQ(basis.size(), cols - rank(m));
    QMatrix stacked(basis.size(), cols);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      for (const auto& x : m * basis[k]) EXPECT_EQ(x, 0);
      for (std::size_t j = 0; j < cols; ++j) stacked(k, j) = basis[k][j];
    }
    EXPECT_EQ(rank(stacked), basis.size());
  }
}

TEST(QPoly, InterpolationRecoversPolynomial) {
  const QPoly p({mpq_class(3), mpq_class(-1, 2), mpq_class(0), mpq_class(2, 3)});
  std::vector<mpq_class> xs, ys;
  for (int i = 0; i < 6; ++i) {
    xs.emplace_back(i * 2 - 3, 5);
    ys.push_back(p(xs.back()));
  }
  EXPECT_EQ(QPoly::interpolate(xs, ys), p);
}

TEST(QPoly, GcdAndRoots) {
  const QPoly a = QPoly({mpq_class(-2), mpq_class(1)}) * QPoly({mpq_class(1, 3), mpq_class(1)});
  const QPoly b = QPoly({mpq_class(-2), mpq_class(1)}) * QPoly({mpq_class(5), mpq_class(0), mpq_class(1)});
  EXPECT_EQ(QPoly::gcd(a, b), QPoly({mpq_class(-2), mpq_class(1)}));
  auto roots = a.rational_roots();
  std::sort(roots.begin(), roots.end());
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_EQ(roots[0], mpq_class(-1, 3));
  EXPECT_EQ(roots[1], 2);
  EXPECT_TRUE(QPoly({mpq_class(5), mpq_class(0), mpq_class(1)}).rational_roots().empty());
  const auto croots = b.roots();
  ASSERT_EQ(croots.size(), 3u);
  for (const auto& z : croots) EXPECT_LT(std::abs(b(z)), 1e-9);
}

TEST(QPoly, RationalSqrt) {
  mpq_class r;
  EXPECT_TRUE(rational_sqrt(mpq_class(9, 16), r));
  EXPECT_EQ(r, mpq_class(3, 4));
  EXPECT_FALSE(rational_sqrt(mpq_class(2), r));
}
