#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>

#include "epme/symbolic/point_state.hpp"

namespace epme::symbolic {

/// Uniform over the finite set ±{0.100, 0.101, ..., 10.000}. Every draw is an exact
/// decimal, so the same value is available as mpq_class and as the nearest double.
mpq_class random_coordinate(std::mt19937_64& rng);

/// All 6·(max_order+1) jet values drawn with random_coordinate, zeroth order first.
PointState<mpq_class> random_point(std::mt19937_64& rng, int max_order = 0);

/// The all-ones point with every derivative set to `derivative_value`.
PointState<mpq_class> ones_point(int max_order = 0, const mpq_class& derivative_value = 0);

PointState<double> to_double(const PointState<mpq_class>& p);
/// Exact: every finite double is a dyadic rational.
PointState<mpq_class> to_exact(const PointState<double>& p);

}  // namespace epme::symbolic
