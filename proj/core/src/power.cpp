#include "ehcr/power.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ehcr/errors.hpp"

namespace ehcr {

double zeta_p(double rate_p, double bandwidth) {
  if (!(bandwidth > 0.0)) throw ValidationError("bandwidth: must be > 0");
  return std::exp2(rate_p / bandwidth) - 1.0;
}

namespace {

double worst_link_outage(double p_tx, double lambda_tx_pd, const Scenario& s) {
  if (!(p_tx > 0.0)) return 0.0;
  const double primary = s.power_pt * s.gains.lambda_pp;
  const double zeta = zeta_p(s.rate_primary, s.bandwidth);
  const double per_link_ok = primary / (p_tx * lambda_tx_pd * zeta + primary);
  // 1 - x^L without losing digits when x is close to 1.
  return -std::expm1(s.num_primary_pairs * std::log(per_link_ok));
}

double max_power_for(double lambda_tx_pd, const Scenario& s) {
  const double zeta = zeta_p(s.rate_primary, s.bandwidth);
  // (1/(1-theta))^{1/L} - 1, with log1p/expm1 for small theta.
  const double slack = std::expm1(-std::log1p(-s.theta_p) / s.num_primary_pairs);
  const double clipped = std::max(slack, 0.0);
  if (clipped == 0.0) return 0.0;
  if (zeta == 0.0) return std::numeric_limits<double>::infinity();
  return s.power_pt * s.gains.lambda_pp / (zeta * lambda_tx_pd) * clipped;
}

}  // namespace

double primary_outage_given_st_power(double p_st, const Scenario& s) {
  return worst_link_outage(p_st, s.gains.lambda_sp, s);
}

double primary_outage_given_sr_power(double p_sr, const Scenario& s) {
  return worst_link_outage(p_sr, s.gains.lambda_rp, s);
}

double max_st_power(const Scenario& s) { return max_power_for(s.gains.lambda_sp, s); }

double max_sr_power(const Scenario& s) { return max_power_for(s.gains.lambda_rp, s); }

PowerBudget capped_powers(const Scenario& s) {
  PowerBudget b;
  b.zeta_p = zeta_p(s.rate_primary, s.bandwidth);
  b.p_st = max_st_power(s);
  b.p_sr = max_sr_power(s);
  b.p_sm = std::min(b.p_st, s.power_peak);
  b.p_r = std::min(b.p_sr, s.power_peak);
  return b;
}

double harvested_energy(double alpha, double delta, double p_sm, double g_sr,
                        double interference_sum) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("alpha: must lie in [0, 1)");
  return alpha * Scenario::slot_duration * delta * (p_sm * g_sr + interference_sum);
}

double relay_harvest_power(double alpha, double delta, double p_sm, double g_sr,
                           double interference_sum) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("alpha: must lie in [0, 1)");
  return 2.0 * harvested_energy(alpha, delta, p_sm, g_sr, interference_sum) /
         ((1.0 - alpha) * Scenario::slot_duration);
}

double relay_tx_power(double p_srh, double p_r) { return std::min(p_srh, p_r); }

}  // namespace ehcr
