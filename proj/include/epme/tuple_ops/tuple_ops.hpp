#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "epme/symbolic/matrix.hpp"

namespace epme::tuple_ops {

using symbolic::ExprMatrix;
using symbolic::ExprVector;
using symbolic::RationalExpr;

class TupleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// k tuples of dimension n. entries[a][i] is coordinate i of tuple a.
template <class T>
struct TupleFamily {
  int k = 0;
  int n = 0;
  std::vector<std::vector<T>> entries;

  /// Throws TupleError on bad shape, k > n, or a zero entry (when zero is decidable).
  void validate() const;
};

using ExactFamily = TupleFamily<mpq_class>;
using SymbolicFamily = TupleFamily<RationalExpr>;

/// (u, v) with u = (u1, u2, u3), v = (v1, v2, v3) as symbols.
SymbolicFamily uv_family();
/// (u, v) taken from a point.
ExactFamily uv_family(const symbolic::PointState<mpq_class>& p);

/// Index tuples (one coordinate index per tuple, 0-based) defining the product components.
///
/// (2,3): the six pairs with distinct indices in the order u1v2, u3v2, u3v1, u2v1, u2v3, u1v3.
/// n = 2: all n^k index tuples in lexicographic order (for k = n = 2 the distinct-index
/// products alone span only two Jacobian rows; the four-product reading is used instead).
/// Otherwise: all k-tuples of pairwise distinct indices, lexicographic; n!/(n-k)! of them.
std::vector<std::vector<int>> index_tuples(int k, int n);

template <class T>
struct StarProduct {
  std::vector<T> components;
  std::vector<std::vector<int>> index_map;
};

template <class T>
StarProduct<T> star_product(const TupleFamily<T>& f);

/// Jacobian of the star product. Columns are tuple-major: (tuple 0 coords, tuple 1 coords, ...).
template <class T>
linalg::DenseMatrix<T> star_jacobian(const TupleFamily<T>& f);

/// The rank the law predicts: k(n-1)+1 for k < n; for k = n the (n-1, n) value, except
/// that n = 2 gives 3 under the four-product reading.
std::size_t expected_rank(int k, int n);

/// Exact rank of a symbolic matrix instantiated at p. Rejects points with a zero coordinate.
std::size_t rank_exact(const ExprMatrix& m, const symbolic::PointState<mpq_class>& p);

struct RankLawResult {
  int k = 0;
  int n = 0;
  std::size_t expected = 0;
  std::vector<std::size_t> observed;
  bool holds = false;
};

/// Star Jacobian ranks by exact elimination at `samples` seeded rational families.
RankLawResult rank_law_check(int k, int n, int samples = 10, std::uint64_t seed = 1);

/// The vector-valued determinant of the (2,3) Jacobian with one row traded for the unit
/// basis vectors, expanded by cofactors.
struct ExternalDet {
  int replaced_row = 1;
  /// Component m is the signed cofactor of basis vector i_m.
  ExprVector vector6;
  /// u2·u3·v1·v3.
  RationalExpr factor;
  /// vector6 / factor.
  ExprVector reduced;
};

/// Row `replaced_row` (1..6) of the Jacobian is deleted and the basis row is placed last.
/// Row 1 reproduces u2u3v1v3·(u1, u2, u3, -v1, -v2, -v3).
ExternalDet external_det(int replaced_row = 1);

/// The scalar r with external_det(row) = r · external_det(1), or nullopt when the two
/// vectors are not proportional.
std::optional<RationalExpr> external_det_ratio(int replaced_row);

/// Jacobian of external_det(1).vector6 with respect to (u, v), divided by the factor.
ExprMatrix operator_from_external_det();

/// Numeric ranks of d(H w0)/d(u,v) and of d(mu)/d(u,v), mu = H w0 / |H w0|, by singular
/// value thresholding at 1e-9 · sigma_max.
std::pair<int, int> hw0_rank_check(const symbolic::PointState<double>& p, const std::array<double, 6>& w0);

}  // namespace epme::tuple_ops
