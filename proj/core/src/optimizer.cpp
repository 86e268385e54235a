#include "ehcr/optimizer.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "ehcr/errors.hpp"

namespace ehcr {

std::string_view to_string(SearchMethod m) {
  return m == SearchMethod::grid ? "grid" : "grid+golden";
}

AlphaOptimum optimize_alpha(const std::function<double(double)>& evaluator,
                            const AlphaSearch& search) {
  if (!(search.grid_lo < search.grid_hi) || !(search.grid_step > 0.0)) {
    throw ValidationError("alpha search: need grid_lo < grid_hi and grid_step > 0");
  }

  AlphaOptimum best;
  auto evaluate = [&](double alpha) {
    const double p = evaluator(alpha);
    ++best.evaluations;
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ConsistencyError("alpha search: evaluator returned " + std::to_string(p) +
                             " at alpha = " + std::to_string(alpha));
    }
    return p;
  };

  const auto steps =
      static_cast<int>(std::llround((search.grid_hi - search.grid_lo) / search.grid_step));
  std::vector<double> grid;
  grid.reserve(steps + 1);
  for (int i = 0; i <= steps; ++i) grid.push_back(search.grid_lo + i * search.grid_step);
  grid.back() = std::min(grid.back(), search.grid_hi);

  std::size_t best_index = 0;
  best.p_out_min = evaluate(grid[0]);
  best.alpha_star = grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double p = evaluate(grid[i]);
    if (p < best.p_out_min) {
      best.p_out_min = p;
      best.alpha_star = grid[i];
      best_index = i;
    }
  }
  best.method = SearchMethod::grid;
  if (!search.refine || grid.size() < 2) return best;

  best.method = SearchMethod::grid_golden;
  double lo = grid[best_index == 0 ? 0 : best_index - 1];
  double hi = grid[best_index + 1 == grid.size() ? best_index : best_index + 1];

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = evaluate(x1);
  double f2 = evaluate(x2);
  while (hi - lo > search.refine_tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = evaluate(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = evaluate(x2);
    }
  }

  const double x = f1 <= f2 ? x1 : x2;
  const double fx = f1 <= f2 ? f1 : f2;
  if (fx < best.p_out_min) {
    best.p_out_min = fx;
    best.alpha_star = x;
  }
  return best;
}

}  // namespace ehcr
