#include "epme/tuple_ops/tuple_ops.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <random>

#include "epme/linalg/bareiss.hpp"
#include "epme/symbolic/sampling.hpp"

namespace epme::tuple_ops {

using symbolic::PointState;
using symbolic::Symbol;

namespace {

bool entry_is_zero(const mpq_class& x) { return x == 0; }
bool entry_is_zero(const RationalExpr& x) { return x.is_zero(); }

const Symbol kUV[6] = {symbolic::u(1), symbolic::u(2), symbolic::u(3),
                       symbolic::v(1), symbolic::v(2), symbolic::v(3)};

void index_tuples_rec(int k, int n, bool distinct, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = 0; i < n; ++i) {
    if (distinct && std::find(cur.begin(), cur.end(), i) != cur.end()) continue;
    cur.push_back(i);
    index_tuples_rec(k, n, distinct, cur, out);
    cur.pop_back();
  }
}

RationalExpr uv_factor() {
  return RationalExpr::symbol(symbolic::u(2)) * RationalExpr::symbol(symbolic::u(3)) *
         RationalExpr::symbol(symbolic::v(1)) * RationalExpr::symbol(symbolic::v(3));
}

}  // namespace

template <class T>
void TupleFamily<T>::validate() const {
  if (k < 2 || n < 2) throw TupleError("tuple family needs k >= 2 and n >= 2");
  if (k > n) throw TupleError("star product needs k <= n, got k=" + std::to_string(k) + ", n=" + std::to_string(n));
  if (entries.size() != static_cast<std::size_t>(k)) throw TupleError("tuple family has the wrong number of tuples");
  for (const auto& tuple : entries) {
    if (tuple.size() != static_cast<std::size_t>(n)) throw TupleError("tuple has the wrong dimension");
    for (const auto& x : tuple)
      if (entry_is_zero(x)) throw TupleError("tuple entries must be nonzero");
  }
}

template struct TupleFamily<mpq_class>;
template struct TupleFamily<RationalExpr>;

SymbolicFamily uv_family() {
  SymbolicFamily f{2, 3, {{}, {}}};
  for (int i = 0; i < 3; ++i) {
    f.entries[0].push_back(RationalExpr::symbol(symbolic::u(i + 1)));
    f.entries[1].push_back(RationalExpr::symbol(symbolic::v(i + 1)));
  }
  return f;
}

ExactFamily uv_family(const PointState<mpq_class>& p) {
  ExactFamily f{2, 3, {{}, {}}};
  for (int i = 0; i < 3; ++i) {
    f.entries[0].push_back(p.u_at(i + 1));
    f.entries[1].push_back(p.v_at(i + 1));
  }
  return f;
}

std::vector<std::vector<int>> index_tuples(int k, int n) {
  if (k < 2 || n < 2 || k > n) throw TupleError("no index tuples for k=" + std::to_string(k) + ", n=" + std::to_string(n));
  if (k == 2 && n == 3) return {{0, 1}, {2, 1}, {2, 0}, {1, 0}, {1, 2}, {0, 2}};
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  index_tuples_rec(k, n, n != 2, cur, out);
  return out;
}

template <class T>
StarProduct<T> star_product(const TupleFamily<T>& f) {
  f.validate();
  StarProduct<T> out;
  out.index_map = index_tuples(f.k, f.n);
  for (const auto& idx : out.index_map) {
    T prod = f.entries[0][static_cast<std::size_t>(idx[0])];
    for (int a = 1; a < f.k; ++a) prod = prod * f.entries[static_cast<std::size_t>(a)][static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])];
    out.components.push_back(prod);
  }
  return out;
}

template <class T>
linalg::DenseMatrix<T> star_jacobian(const TupleFamily<T>& f) {
  f.validate();
  const auto tuples = index_tuples(f.k, f.n);
  linalg::DenseMatrix<T> j(tuples.size(), static_cast<std::size_t>(f.k * f.n));
  for (std::size_t r = 0; r < tuples.size(); ++r) {
    for (int b = 0; b < f.k; ++b) {
      // d/dx[b][idx[b]] of the product is the product of the other factors.
      T prod(1);
      for (int a = 0; a < f.k; ++a)
        if (a != b) prod = prod * f.entries[static_cast<std::size_t>(a)][static_cast<std::size_t>(tuples[r][static_cast<std::size_t>(a)])];
      j(r, static_cast<std::size_t>(b * f.n + tuples[r][static_cast<std::size_t>(b)])) = prod;
    }
  }
  return j;
}

template StarProduct<mpq_class> star_product(const ExactFamily&);
template StarProduct<RationalExpr> star_product(const SymbolicFamily&);
template linalg::QMatrix star_jacobian(const ExactFamily&);
template ExprMatrix star_jacobian(const SymbolicFamily&);

std::size_t expected_rank(int k, int n) {
  if (k < 2 || n < 2 || k > n) throw TupleError("rank law needs 2 <= k <= n");
  if (n == 2) return 3;
  if (k < n) return static_cast<std::size_t>(k * (n - 1) + 1);
  return static_cast<std::size_t>((n - 1) * (n - 1) + 1);
}

std::size_t rank_exact(const ExprMatrix& m, const PointState<mpq_class>& p) {
  if (!p.coordinates_nonzero()) throw TupleError("degenerate point: a coordinate is zero");
  return linalg::rank(symbolic::evaluate(m, p));
}

RankLawResult rank_law_check(int k, int n, int samples, std::uint64_t seed) {
  RankLawResult out{k, n, expected_rank(k, n), {}, true};
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    ExactFamily f{k, n, std::vector<std::vector<mpq_class>>(static_cast<std::size_t>(k))};
    for (auto& tuple : f.entries)
      for (int i = 0; i < n; ++i) tuple.push_back(symbolic::random_coordinate(rng));
    const std::size_t r = linalg::rank(star_jacobian(f));
    out.observed.push_back(r);
    out.holds = out.holds && r == out.expected;
  }
  out.holds = out.holds && samples > 0;
  return out;
}

ExternalDet external_det(int replaced_row) {
  if (replaced_row < 1 || replaced_row > 6) throw TupleError("replaced row must be 1..6");
  const ExprMatrix j = star_jacobian(uv_family());
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < 6; ++r)
    if (static_cast<int>(r) != replaced_row - 1) rows.push_back(r);
  ExternalDet out;
  out.replaced_row = replaced_row;
  out.factor = uv_factor();
  for (std::size_t m = 0; m < 6; ++m) {
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < 6; ++c)
      if (c != m) cols.push_back(c);
    // Basis row sits at position 6, so the cofactor sign is (-1)^(6+m+1) with 1-based m.
    RationalExpr cof = symbolic::symbolic_determinant(j.submatrix(rows, cols));
    if ((5 + m) % 2 == 1) cof = -cof;
    out.vector6.push_back(cof);
    out.reduced.push_back(cof / out.factor);
  }
  return out;
}

std::optional<RationalExpr> external_det_ratio(int replaced_row) {
  const ExternalDet ref = external_det(1);
  const ExternalDet other = external_det(replaced_row);
  const RationalExpr r = other.vector6[0] / ref.vector6[0];
  for (std::size_t m = 1; m < 6; ++m)
    if (!symbolic::equals(other.vector6[m], r * ref.vector6[m])) return std::nullopt;
  return r;
}

ExprMatrix operator_from_external_det() {
  const ExternalDet d = external_det(1);
  ExprMatrix h(6, 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) h(i, j) = symbolic::partial(d.vector6[i], kUV[j]) / d.factor;
  return h;
}

std::pair<int, int> hw0_rank_check(const PointState<double>& p, const std::array<double, 6>& w0) {
  // dH[k] = dH/dx_k, built once.
  static const std::vector<ExprMatrix> dh = [] {
    const ExprMatrix h = operator_from_external_det();
    std::vector<ExprMatrix> out;
    for (const Symbol& s : kUV) {
      ExprMatrix d(6, 6);
      for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) d(i, j) = symbolic::partial(h(i, j), s);
      out.push_back(d);
    }
    return out;
  }();
  static const ExprMatrix h = operator_from_external_det();

  if (!p.coordinates_nonzero()) throw TupleError("degenerate point: a coordinate is zero");
  Eigen::Matrix<double, 6, 1> w;
  for (int i = 0; i < 6; ++i) w(i) = w0[static_cast<std::size_t>(i)];
  const auto hd = symbolic::evaluate(h, p);
  Eigen::Matrix<double, 6, 6> hm;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) hm(i, j) = hd(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  const Eigen::Matrix<double, 6, 1> y = hm * w;
  const double ny = y.norm();
  if (!(ny > 0)) throw TupleError("|H w0| = 0: the direction is undefined");

  Eigen::Matrix<double, 6, 6> jac;
  for (int k = 0; k < 6; ++k) {
    const auto dk = symbolic::evaluate(dh[static_cast<std::size_t>(k)], p);
    for (int i = 0; i < 6; ++i) {
      double acc = 0;
      for (int j = 0; j < 6; ++j) acc += dk(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) * w(j);
      jac(i, k) = acc;
    }
  }
  const Eigen::Matrix<double, 6, 1> mu = y / ny;
  const Eigen::Matrix<double, 6, 6> jmu =
      (Eigen::Matrix<double, 6, 6>::Identity() - mu * mu.transpose()) * jac / ny;

  auto numeric_rank = [](const Eigen::Matrix<double, 6, 6>& m) {
    Eigen::JacobiSVD<Eigen::Matrix<double, 6, 6>> svd(m);
    const auto& s = svd.singularValues();
    int r = 0;
    for (int i = 0; i < 6; ++i)
      if (s(i) > 1e-9 * s(0)) ++r;
    return r;
  };
  return {numeric_rank(jac), numeric_rank(jmu)};
}

}  // namespace epme::tuple_ops
