#pragma once

#include <functional>
#include <string_view>

namespace ehcr {

enum class SearchMethod { grid, grid_golden };

std::string_view to_string(SearchMethod m);

struct AlphaOptimum {
  double alpha_star = 0.0;
  double p_out_min = 1.0;
  int evaluations = 0;
  SearchMethod method = SearchMethod::grid;
};

struct AlphaSearch {
  double grid_lo = 0.01;
  double grid_hi = 0.99;
  double grid_step = 0.01;
  double refine_tol = 1e-4;
  /// Off for noisy evaluators (Monte Carlo).
  bool refine = true;
};

/// Scans the grid, keeps the first (smallest-alpha) minimum, then runs a
/// golden-section search between the neighbouring grid points. The refined
/// point replaces the grid point only if it is strictly better.
/// Throws ConsistencyError if the evaluator returns a value outside [0, 1].
AlphaOptimum optimize_alpha(const std::function<double(double)>& evaluator,
                            const AlphaSearch& search = {});

}  // namespace ehcr
