#pragma once

#include "geored/expr.hpp"

namespace geo {

constexpr unsigned kDefaultSeed = 1729;
constexpr int kDefaultSamples = 100;

// Random rational chart points subject to declared open conditions (each
// expression must evaluate nonzero); rejection sampling with a deterministic
// seed. Fixed parameter values are merged into every point.
std::vector<Point> sample_points(const Chart& chart, const std::vector<Expr>& open_conditions,
                                 int n, unsigned seed, const Point& param_values = {},
                                 const Bindings& bindings = {});

}  // namespace geo
