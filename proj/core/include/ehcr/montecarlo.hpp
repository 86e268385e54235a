#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "ehcr/philox.hpp"
#include "ehcr/power.hpp"
#include "ehcr/scenario.hpp"

namespace ehcr {

enum class EhMode {
  with_interference,     // harvest ST's signal and the primary interference
  without_interference,  // harvest ST's signal only; interference still hurts SIR
};

std::string_view to_string(EhMode mode);

/// One slot's squared channel magnitudes. Per-pair arrays have length L.
struct ChannelDraw {
  double g_sr = 0.0;
  double g_rd = 0.0;
  std::vector<double> g_pr;
  std::vector<double> g_pd;
  std::vector<double> g_pp;
  std::vector<double> g_sp;
  std::vector<double> g_rp;
};

/// Draw order is g_sr, g_rd, g_pr[0..L), g_pd[0..L), g_pp, g_sp, g_rp, so the
/// links that enter the secondary outage form a prefix of the stream.
void sample_channels(const Scenario& s, SampleStream& stream, ChannelDraw& out);
ChannelDraw sample_channels(const Scenario& s, SampleStream& stream);

enum class SlotOutcome { success, outage };

/// Outage iff min(gamma_SR, gamma_SD) < xi_s for this draw.
SlotOutcome slot_outcome(const ChannelDraw& draw, const Scenario& s, double alpha,
                         const PowerBudget& budget, EhMode mode);

struct MonteCarloEstimate {
  double p_hat = 0.0;
  std::uint64_t n = 0;
  double std_err = 0.0;  // sqrt(p_hat (1 - p_hat) / n)
  std::uint64_t seed = 0;
  EhMode mode = EhMode::with_interference;
};

/// Empirical secondary outage over n slots. Sample i always uses
/// SampleStream(seed, i), so the estimate does not depend on `workers`
/// (0 = hardware concurrency). When P_Sm = 0 the outage is certain and no
/// sampling happens.
MonteCarloEstimate estimate_outage(const Scenario& s, double alpha, std::uint64_t n,
                                   std::uint64_t seed, EhMode mode, unsigned workers = 0);

/// Both EH modes on the same draws (common random numbers).
struct PairedEstimate {
  MonteCarloEstimate with_interference;
  MonteCarloEstimate without_interference;
};

PairedEstimate estimate_outage_paired(const Scenario& s, double alpha, std::uint64_t n,
                                      std::uint64_t seed, unsigned workers = 0);

/// Empirical worst-link primary outage when ST transmits with p_st: a slot is
/// in outage if any PD_i sees P_PT g_pp_i / (p_st g_sp_i) <= zeta_p.
MonteCarloEstimate estimate_primary_outage(const Scenario& s, double p_st, std::uint64_t n,
                                           std::uint64_t seed, unsigned workers = 0);

}  // namespace ehcr
