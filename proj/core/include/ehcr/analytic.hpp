#pragma once

#include "ehcr/power.hpp"
#include "ehcr/scenario.hpp"

namespace ehcr {

/// Symbols of the closed-form CDF of gamma_SD for one (scenario, alpha).
///
///   a = P_PT l_pr        scale of G1, the interference sum at SR
///   b = 2 alpha delta l_rd / (1 - alpha)   mean of Z2
///   c = P_Sm l_sr        mean of G2, ST's signal at SR
///   d = P_PT l_pd        scale of Z1, the interference sum at SD
///   t = (1/a - 1/c)^-1   negative whenever c < a
///   theta = 1/c + 1/t  (= 1/a),   f = sqrt(theta / b)
struct AnalyticTerms {
  int num_pairs = 1;
  double alpha = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double t = 0.0;
  double f = 0.0;
  double theta = 0.0;
  double xi_s = 0.0;
  double p_r = 0.0;       // relay power cap P_R
  double p_r_star = 0.0;  // (1 - alpha) P_R / (2 alpha delta)
  double lambda_rd = 0.0;
};

/// 2^{2 R_s / ((1 - alpha) B L)} - 1. Throws ValidationError unless 0 < alpha < 1.
double xi_s(double rate_s, double bandwidth, int num_pairs, double alpha);

/// Requires budget.p_sm > 0. If a and c agree to 1e-9 relative, c is nudged
/// by 1e-9 so that t stays finite. Throws ConsistencyError if the identities
/// theta*a = 1 and f^2 b = theta fail to 1e-12.
AnalyticTerms make_terms(const Scenario& s, const PowerBudget& budget, double alpha);

/// F_SR(xi) = 1 - (1 + a xi / c)^{-L}.
double cdf_gamma_sr(double xi, const AnalyticTerms& terms);

/// P(G1 + G2 >= P_R*), the probability that harvesting saturates at P_R.
double prob_h1(const AnalyticTerms& terms);

/// The Whittaker-function terms of the closed form for
/// I = P(Z2 (G1 + G2) / Z1 <= xi). Both equal the defining double
/// integrals divided by Gamma(L), which is why the prefactor of I carries no
/// 1/Gamma(L).
double term_i1(double xi, const AnalyticTerms& terms);
double term_i2(double xi, const AnalyticTerms& terms);

/// I = 2 t^L / (b c (a d)^L) (I1 - I2), with I(0) = 0. When (|t|/a)^L is so
/// large that I1 - I2 cancels catastrophically, falls back to a 1-D quadrature
/// over the density of G1 + G2. Throws ConsistencyError for results outside
/// [-1e-9, 1 + 1e-9].
double term_i(double xi, const AnalyticTerms& terms);

/// True when term_i(xi, terms) is evaluated through the Whittaker closed form.
bool term_i_uses_closed_form(const AnalyticTerms& terms);

/// F_SD(xi) = I (1 - P_H1) + J P_H1 with J = 1 - (1 + d xi / (P_R l_rd))^{-L}.
/// Returns 1 when P_R = 0.
double cdf_gamma_sd(double xi, const AnalyticTerms& terms);

/// Densities of Z = G1 + G2 and Q = Z2 Z.
double pdf_z(double z, const AnalyticTerms& terms);
double pdf_q(double q, const AnalyticTerms& terms);

/// Closed-form secondary outage 1 - (1 - F_SR)(1 - F_SD) at xi_s.
/// Returns 1 when ST may not transmit (P_Sm = 0).
double secondary_outage_analytic(const Scenario& s, double alpha);

/// Outage without the independence shortcuts of the closed form: the joint
/// dependence of gamma_SR and gamma_SD on (G1, G2) and of the harvesting
/// event on G1 + G2 is kept, and
///   1 - E[1{G2 >= xi G1} (1 + xi d / (l_rd min(kappa (G1 + G2), P_R)))^{-L}]
/// is integrated numerically over (G1, G2). kappa = 2 alpha delta / (1 - alpha).
double secondary_outage_exact(const Scenario& s, double alpha);

/// Holds the power budget so that alpha sweeps only rebuild AnalyticTerms.
class AnalyticModel {
 public:
  explicit AnalyticModel(Scenario s);

  const Scenario& scenario() const { return scenario_; }
  const PowerBudget& budget() const { return budget_; }

  AnalyticTerms terms(double alpha) const;
  double outage(double alpha) const;
  double outage_exact(double alpha) const;

 private:
  Scenario scenario_;
  PowerBudget budget_;
};

}  // namespace ehcr
