#pragma once

#include "ehcr/scenario.hpp"

namespace ehcr {

/// Transmit powers allowed by the primary outage and peak power constraints
/// (linear units).
struct PowerBudget {
  double zeta_p = 0.0;  // primary SIR threshold 2^{R_p/B} - 1
  double p_st = 0.0;    // ST limit from the primary outage constraint
  double p_sr = 0.0;    // SR limit from the primary outage constraint
  double p_sm = 0.0;    // min(p_st, P_t)
  double p_r = 0.0;     // min(p_sr, P_t)
};

double zeta_p(double rate_p, double bandwidth);

/// Outage probability of the worst primary link when ST transmits with p_st:
///   1 - (P_PT l_pp / (p_st l_sp zeta_p + P_PT l_pp))^L.
double primary_outage_given_st_power(double p_st, const Scenario& s);

/// Same for an SR transmit power (l_rp in place of l_sp).
double primary_outage_given_sr_power(double p_sr, const Scenario& s);

/// Largest ST power keeping the worst primary link's outage at theta_p,
///   P_PT l_pp / (zeta_p l_sp) * ((1/(1-theta_p))^{1/L} - 1)^+.
double max_st_power(const Scenario& s);
double max_sr_power(const Scenario& s);

PowerBudget capped_powers(const Scenario& s);

/// Energy harvested over alpha*T from ST's signal plus the primary
/// interference: alpha T delta (p_sm g_sr + interference_sum). Requires
/// 0 <= alpha < 1.
double harvested_energy(double alpha, double delta, double p_sm, double g_sr,
                        double interference_sum);

/// Relay transmit power from the harvested energy spread over the forwarding
/// half of the remaining slot: 2 E / ((1 - alpha) T).
double relay_harvest_power(double alpha, double delta, double p_sm, double g_sr,
                           double interference_sum);

/// min(p_srh, p_r).
double relay_tx_power(double p_srh, double p_r);

}  // namespace ehcr
