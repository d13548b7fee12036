#pragma once

#include "geored/expr.hpp"

namespace geo {

// certified == false marks the probabilistic fallback path; acceptance-grade
// checks must only rely on certified results.
struct EqResult {
  bool equal = false;
  bool certified = true;
};

EqResult expr_equal_ex(const Expr& a, const Expr& b);
bool expr_equal(const Expr& a, const Expr& b);
EqResult is_zero_ex(const Expr& e);
bool is_zero(const Expr& e);

}  // namespace geo
