#include "ehcr/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "ehcr/analytic.hpp"
#include "ehcr/errors.hpp"

namespace ehcr {

std::string_view to_string(EhMode mode) {
  switch (mode) {
    case EhMode::with_interference:
      return "with-interference-eh";
    case EhMode::without_interference:
      return "without-interference-eh";
  }
  return "?";
}

namespace {

void sample_secondary_links(const Scenario& s, SampleStream& stream, ChannelDraw& out) {
  const auto L = static_cast<std::size_t>(s.num_primary_pairs);
  out.g_sr = stream.exponential(s.gains.lambda_sr);
  out.g_rd = stream.exponential(s.gains.lambda_rd);
  out.g_pr.resize(L);
  out.g_pd.resize(L);
  for (auto& g : out.g_pr) g = stream.exponential(s.gains.lambda_pr);
  for (auto& g : out.g_pd) g = stream.exponential(s.gains.lambda_pd);
}

// Per-alpha constants of the slot rule.
struct SlotRule {
  double xi = 0.0;
  double harvest_gain = 0.0;  // 2 delta alpha / (1 - alpha)
  double p_sm = 0.0;
  double p_r = 0.0;
  double p_pt = 0.0;

  SlotRule(const Scenario& s, double alpha, const PowerBudget& budget)
      : xi(xi_s(s.rate_secondary, s.bandwidth, s.num_primary_pairs, alpha)),
        harvest_gain(2.0 * s.delta * alpha / ((1.0 - alpha) * Scenario::slot_duration)),
        p_sm(budget.p_sm),
        p_r(budget.p_r),
        p_pt(s.power_pt) {}

  SlotOutcome operator()(const ChannelDraw& draw, EhMode mode) const {
    const double interference_sr =
        p_pt * std::accumulate(draw.g_pr.begin(), draw.g_pr.end(), 0.0);
    const double interference_sd =
        p_pt * std::accumulate(draw.g_pd.begin(), draw.g_pd.end(), 0.0);
    const double signal_sr = p_sm * draw.g_sr;

    const double harvested =
        signal_sr + (mode == EhMode::with_interference ? interference_sr : 0.0);
    const double p_rm = relay_tx_power(harvest_gain * harvested, p_r);

    // min(gamma_SR, gamma_SD) < xi, compared without dividing.
    const bool sr_ok = signal_sr >= xi * interference_sr;
    const bool sd_ok = p_rm * draw.g_rd >= xi * interference_sd;
    return (sr_ok && sd_ok) ? SlotOutcome::success : SlotOutcome::outage;
  }
};

unsigned resolve_workers(unsigned workers, std::uint64_t n) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(n, 1)));
}

// Splits [0, n) into contiguous chunks, runs body(begin, end) on each and
// sums the integer counts. Each body must depend only on its sample indices.
template <class Body>
auto parallel_count(std::uint64_t n, unsigned workers, Body body) {
  using Count = decltype(body(std::uint64_t{0}, std::uint64_t{0}));
  workers = resolve_workers(workers, n);
  if (workers <= 1) return body(std::uint64_t{0}, n);
  std::vector<Count> counts(workers, Count{});
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = n * w / workers;
      const std::uint64_t end = n * (w + 1) / workers;
      pool.emplace_back([&counts, &body, w, begin, end] { counts[w] = body(begin, end); });
    }
  }
  return std::accumulate(counts.begin(), counts.end(), Count{});
}

MonteCarloEstimate make_estimate(std::uint64_t outages, std::uint64_t n, std::uint64_t seed,
                                 EhMode mode) {
  MonteCarloEstimate e;
  e.n = n;
  e.seed = seed;
  e.mode = mode;
  e.p_hat = static_cast<double>(outages) / static_cast<double>(n);
  e.std_err = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(n));
  return e;
}

struct PairCount {
  std::uint64_t with = 0;
  std::uint64_t without = 0;

  friend PairCount operator+(PairCount x, PairCount y) {
    return {x.with + y.with, x.without + y.without};
  }
};

void require_inputs(double alpha, std::uint64_t n) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha: must lie in (0, 1)");
  if (n < 1) throw ValidationError("samples: must be at least 1");
}

}  // namespace

void sample_channels(const Scenario& s, SampleStream& stream, ChannelDraw& out) {
  sample_secondary_links(s, stream, out);
  const auto L = static_cast<std::size_t>(s.num_primary_pairs);
  out.g_pp.resize(L);
  out.g_sp.resize(L);
  out.g_rp.resize(L);
  for (auto& g : out.g_pp) g = stream.exponential(s.gains.lambda_pp);
  for (auto& g : out.g_sp) g = stream.exponential(s.gains.lambda_sp);
  for (auto& g : out.g_rp) g = stream.exponential(s.gains.lambda_rp);
}

ChannelDraw sample_channels(const Scenario& s, SampleStream& stream) {
  ChannelDraw draw;
  sample_channels(s, stream, draw);
  return draw;
}

SlotOutcome slot_outcome(const ChannelDraw& draw, const Scenario& s, double alpha,
                         const PowerBudget& budget, EhMode mode) {
  return SlotRule(s, alpha, budget)(draw, mode);
}

MonteCarloEstimate estimate_outage(const Scenario& s, double alpha, std::uint64_t n,
                                   std::uint64_t seed, EhMode mode, unsigned workers) {
  require_inputs(alpha, n);
  const PowerBudget budget = capped_powers(s);
  if (!(budget.p_sm > 0.0)) return make_estimate(n, n, seed, mode);

  const SlotRule rule(s, alpha, budget);
  const std::uint64_t outages =
      parallel_count(n, workers, [&](std::uint64_t begin, std::uint64_t end) {
        ChannelDraw draw;
        std::uint64_t count{0};
        for (std::uint64_t i = begin; i < end; ++i) {
          SampleStream stream(seed, i);
          sample_secondary_links(s, stream, draw);
          count += rule(draw, mode) == SlotOutcome::outage;
        }
        return count;
      });
  return make_estimate(outages, n, seed, mode);
}

PairedEstimate estimate_outage_paired(const Scenario& s, double alpha, std::uint64_t n,
                                      std::uint64_t seed, unsigned workers) {
  require_inputs(alpha, n);
  const PowerBudget budget = capped_powers(s);
  if (!(budget.p_sm > 0.0)) {
    return {make_estimate(n, n, seed, EhMode::with_interference),
            make_estimate(n, n, seed, EhMode::without_interference)};
  }

  const SlotRule rule(s, alpha, budget);
  const PairCount counts =
      parallel_count(n, workers, [&](std::uint64_t begin, std::uint64_t end) {
        ChannelDraw draw;
        PairCount c;
        for (std::uint64_t i = begin; i < end; ++i) {
          SampleStream stream(seed, i);
          sample_secondary_links(s, stream, draw);
          c.with += rule(draw, EhMode::with_interference) == SlotOutcome::outage;
          c.without += rule(draw, EhMode::without_interference) == SlotOutcome::outage;
        }
        return c;
      });
  return {make_estimate(counts.with, n, seed, EhMode::with_interference),
          make_estimate(counts.without, n, seed, EhMode::without_interference)};
}

MonteCarloEstimate estimate_primary_outage(const Scenario& s, double p_st, std::uint64_t n,
                                           std::uint64_t seed, unsigned workers) {
  if (n < 1) throw ValidationError("samples: must be at least 1");
  const double zeta = zeta_p(s.rate_primary, s.bandwidth);
  const std::uint64_t outages =
      parallel_count(n, workers, [&](std::uint64_t begin, std::uint64_t end) {
        ChannelDraw draw;
        std::uint64_t count{0};
        for (std::uint64_t i = begin; i < end; ++i) {
          SampleStream stream(seed, i);
          sample_channels(s, stream, draw);
          bool any = false;
          for (std::size_t k = 0; k < draw.g_pp.size(); ++k) {
            any = any || s.power_pt * draw.g_pp[k] <= zeta * p_st * draw.g_sp[k];
          }
          count += any;
        }
        return count;
      });
  return make_estimate(outages, n, seed, EhMode::with_interference);
}

}  // namespace ehcr
