#include "geored/sampling.hpp"

#include <random>

namespace geo {

std::vector<Point> sample_points(const Chart& chart, const std::vector<Expr>& open_conditions,
                                 int n, unsigned seed, const Point& param_values,
                                 const Bindings& bindings) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> numd(-12, 12), dend(1, 3);
  std::vector<Point> out;
  int guard = 0;
  while ((int)out.size() < n) {
    if (++guard > 200 * n + 1000)
      throw EvalError("sampling failed: open conditions reject too many points");
    Point p = param_values;
    for (auto& c : chart.coords) p[c] = Rat(numd(rng), dend(rng));
    bool ok = true;
    try {
      for (auto& cond : open_conditions)
        if (evaluate(cond, p, bindings) == 0) {
          ok = false;
          break;
        }
    } catch (const EvalError&) {
      ok = false;
    }
    if (ok) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace geo
