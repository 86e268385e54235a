#include "ehcr/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>

#include "ehcr/analytic.hpp"
#include "ehcr/errors.hpp"
#include "ehcr/montecarlo.hpp"
#include "ehcr/optimizer.hpp"

namespace ehcr {

std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::alpha:
      return "alpha";
    case SweepVariable::theta_p:
      return "theta_p";
    case SweepVariable::num_pairs:
      return "L";
  }
  return "?";
}

std::string_view to_string(Evaluator e) {
  switch (e) {
    case Evaluator::analytic:
      return "analytic";
    case Evaluator::mc:
      return "mc";
    case Evaluator::mc_baseline:
      return "mc-baseline";
  }
  return "?";
}

SweepVariable parse_sweep_variable(std::string_view text) {
  if (text == "alpha") return SweepVariable::alpha;
  if (text == "theta_p") return SweepVariable::theta_p;
  if (text == "L") return SweepVariable::num_pairs;
  throw ValidationError("sweep: unknown variable '" + std::string(text) +
                        "' (expected alpha, theta_p or L)");
}

Evaluator parse_evaluator(std::string_view text) {
  if (text == "analytic") return Evaluator::analytic;
  if (text == "mc") return Evaluator::mc;
  if (text == "mc-baseline") return Evaluator::mc_baseline;
  throw ValidationError("eval: unknown evaluator '" + std::string(text) +
                        "' (expected analytic, mc or mc-baseline)");
}

std::vector<double> linear_values(double from, double to, double step) {
  if (!(step > 0.0) || !std::isfinite(from) || !std::isfinite(to) || to < from) {
    throw ValidationError("sweep range: need finite from <= to and step > 0");
  }
  const auto count = std::llround(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) values.push_back(from + static_cast<double>(i) * step);
  return values;
}

void validate(const SweepSpec& spec) {
  if (spec.values.empty()) throw ValidationError("sweep: no values");
  if (spec.evaluators.empty()) throw ValidationError("eval: no evaluators");
  if (spec.mc_samples < 1) throw ValidationError("samples: must be at least 1");
  for (double v : spec.values) {
    switch (spec.variable) {
      case SweepVariable::alpha:
        if (!(v > 0.0 && v < 1.0)) throw ValidationError("sweep alpha: values must lie in (0, 1)");
        break;
      case SweepVariable::theta_p:
        if (!(v >= 0.0 && v < 1.0)) throw ValidationError("sweep theta_p: values must lie in [0, 1)");
        break;
      case SweepVariable::num_pairs:
        if (!(v >= 1.0 && v == std::floor(v) && v <= 1e6)) {
          throw ValidationError("sweep L: values must be positive integers");
        }
        break;
    }
  }
  if (spec.variable == SweepVariable::alpha && spec.optimize) {
    throw ValidationError("optimize: only applies to theta_p and L sweeps");
  }
  if (spec.variable != SweepVariable::alpha && !spec.optimize &&
      !(spec.alpha > 0.0 && spec.alpha < 1.0)) {
    throw ValidationError("alpha: must lie in (0, 1)");
  }
}

namespace {

struct Task {
  std::size_t value_index;
  Evaluator evaluator;
};

Scenario scenario_for(const Scenario& base, SweepVariable variable, double value) {
  switch (variable) {
    case SweepVariable::theta_p:
      return with_theta_p(base, value);
    case SweepVariable::num_pairs:
      return with_num_pairs(base, static_cast<int>(value));
    case SweepVariable::alpha:
      break;
  }
  return base;
}

SweepRow evaluate_task(const Scenario& base, const SweepSpec& spec, const Task& task,
                       unsigned mc_workers) {
  const double value = spec.values[task.value_index];
  const Scenario s = scenario_for(base, spec.variable, value);

  SweepRow row;
  row.variable = spec.variable;
  row.value = value;
  row.evaluator = task.evaluator;
  row.num_pairs = s.num_primary_pairs;
  row.theta_p = s.theta_p;
  row.p_t_db = s.power_peak_db;

  const bool is_mc = task.evaluator != Evaluator::analytic;
  const EhMode mode = task.evaluator == Evaluator::mc_baseline ? EhMode::without_interference
                                                                : EhMode::with_interference;
  if (is_mc) {
    row.n_samples = spec.mc_samples;
    row.seed = spec.seed;
  }

  if (spec.optimize) {
    if (is_mc) {
      double std_err_at_best = 0.0;
      double best_p = 2.0;
      AlphaSearch search;
      search.refine = false;
      const AlphaOptimum opt = optimize_alpha(
          [&](double alpha) {
            const auto e = estimate_outage(s, alpha, spec.mc_samples, spec.seed, mode, mc_workers);
            if (e.p_hat < best_p) {
              best_p = e.p_hat;
              std_err_at_best = e.std_err;
            }
            return e.p_hat;
          },
          search);
      row.alpha_star = opt.alpha_star;
      row.p_out_min = opt.p_out_min;
      row.std_err = std_err_at_best;
    } else {
      const AnalyticModel model(s);
      const AlphaOptimum opt = optimize_alpha([&](double alpha) { return model.outage(alpha); });
      row.alpha_star = opt.alpha_star;
      row.p_out_min = opt.p_out_min;
    }
    return row;
  }

  const double alpha = spec.variable == SweepVariable::alpha ? value : spec.alpha;
  row.alpha = alpha;
  if (is_mc) {
    const auto e = estimate_outage(s, alpha, spec.mc_samples, spec.seed, mode, mc_workers);
    row.p_out = e.p_hat;
    row.std_err = e.std_err;
  } else {
    row.p_out = secondary_outage_analytic(s, alpha);
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const Scenario& base, const SweepSpec& spec) {
  validate(spec);
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    for (Evaluator e : spec.evaluators) tasks.push_back({i, e});
  }

  unsigned threads = spec.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                       : spec.threads;
  const unsigned pool_size = std::min<unsigned>(threads, static_cast<unsigned>(tasks.size()));
  const unsigned mc_workers = std::max(1u, threads / std::max(1u, pool_size));

  std::vector<SweepRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      try {
        rows[k] = evaluate_task(base, spec, tasks[k], mc_workers);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    }
  };

  if (pool_size <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < pool_size; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kCsvHeader << '\n';
  auto opt = [&out](const auto& field) {
    out << ',';
    if (!field) return;
    if constexpr (std::is_same_v<std::decay_t<decltype(*field)>, double>) {
      out << format_double(*field);
    } else {
      out << std::to_string(*field);
    }
  };
  for (const SweepRow& r : rows) {
    out << to_string(r.variable) << ',' << format_double(r.value) << ',' << to_string(r.evaluator);
    opt(r.alpha);
    out << ',' << std::to_string(r.num_pairs) << ',' << format_double(r.theta_p) << ',' << format_double(r.p_t_db);
    opt(r.p_out);
    opt(r.std_err);
    opt(r.alpha_star);
    opt(r.p_out_min);
    opt(r.n_samples);
    opt(r.seed);
    out << '\n';
  }
}

}  // namespace ehcr
