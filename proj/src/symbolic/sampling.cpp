#include "epme/symbolic/sampling.hpp"

#include <cmath>

namespace epme::symbolic {

mpq_class random_coordinate(std::mt19937_64& rng) {
  const std::uint64_t r = rng();
  const long magnitude = 100 + static_cast<long>((r >> 1) % 9901);
  mpq_class x(magnitude, 1000);
  x.canonicalize();
  return (r & 1u) ? mpq_class(-x) : x;
}

PointState<mpq_class> random_point(std::mt19937_64& rng, int max_order) {
  PointState<mpq_class> p(max_order);
  for (int order = 0; order <= max_order; ++order)
    for (int b = 0; b < kBaseCount; ++b) p.set(Symbol{static_cast<Base>(b), order}, random_coordinate(rng));
  return p;
}

PointState<mpq_class> ones_point(int max_order, const mpq_class& derivative_value) {
  PointState<mpq_class> p(max_order);
  for (int order = 0; order <= max_order; ++order)
    for (int b = 0; b < kBaseCount; ++b)
      p.set(Symbol{static_cast<Base>(b), order}, order == 0 ? mpq_class(1) : derivative_value);
  return p;
}

PointState<double> to_double(const PointState<mpq_class>& p) {
  PointState<double> out(p.max_order());
  for (int i = 0; i < kBaseCount * (p.max_order() + 1); ++i) {
    const Symbol s = Symbol::from_index(i);
    out.set(s, p.at(s).get_d());
  }
  return out;
}

PointState<mpq_class> to_exact(const PointState<double>& p) {
  PointState<mpq_class> out(p.max_order());
  for (int i = 0; i < kBaseCount * (p.max_order() + 1); ++i) {
    const Symbol s = Symbol::from_index(i);
    const double x = p.at(s);
    if (!std::isfinite(x)) throw SymbolicError("non-finite value for " + s.name());
    out.set(s, mpq_class(x));
  }
  return out;
}

}  // namespace epme::symbolic
