#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ehcr/scenario.hpp"

namespace ehcr {

enum class SweepVariable { alpha, theta_p, num_pairs };
enum class Evaluator { analytic, mc, mc_baseline };

std::string_view to_string(SweepVariable v);
std::string_view to_string(Evaluator e);
SweepVariable parse_sweep_variable(std::string_view text);
Evaluator parse_evaluator(std::string_view text);

struct SweepSpec {
  SweepVariable variable = SweepVariable::alpha;
  std::vector<double> values;
  std::vector<Evaluator> evaluators{Evaluator::analytic};
  std::uint64_t mc_samples = 1'000'000;
  std::uint64_t seed = 42;
  /// Per-point alpha optimization; theta_p and L sweeps only.
  bool optimize = false;
  /// Fixed alpha for theta_p / L sweeps without optimization.
  double alpha = 0.5;
  unsigned threads = 0;
};

/// from, from + step, ..., to (inclusive up to rounding of (to - from)/step).
std::vector<double> linear_values(double from, double to, double step);

/// Throws ValidationError if values are empty or out of domain.
void validate(const SweepSpec& spec);

/// One CSV row; empty optionals print as empty cells.
struct SweepRow {
  SweepVariable variable = SweepVariable::alpha;
  double value = 0.0;
  Evaluator evaluator = Evaluator::analytic;
  std::optional<double> alpha;
  int num_pairs = 0;
  double theta_p = 0.0;
  double p_t_db = 0.0;
  std::optional<double> p_out;
  std::optional<double> std_err;
  std::optional<double> alpha_star;
  std::optional<double> p_out_min;
  std::optional<std::uint64_t> n_samples;
  std::optional<std::uint64_t> seed;
};

/// Rows come back in (value, evaluator) order regardless of how the points
/// were scheduled across threads.
std::vector<SweepRow> run_sweep(const Scenario& base, const SweepSpec& spec);

inline constexpr std::string_view kCsvHeader =
    "variable,value,evaluator,alpha,L,theta_p,p_t_db,p_out,std_err,alpha_star,p_out_min,"
    "n_samples,seed";

/// Shortest decimal that round-trips to the same double; '.' separator,
/// independent of the global locale.
std::string format_double(double v);

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace ehcr
