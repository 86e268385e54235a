#pragma once

#include <cmath>
#include <string>

namespace ehcr {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b);

/// 10^(x/10).
double db_to_linear(double db);

/// Mean channel power gain d^-rho between two nodes. Throws ValidationError
/// for coincident positions or rho <= 0.
double mean_gain(Point a, Point b, double rho);

/// Mean power gains of every link class. The same value applies to all L
/// primary pairs since PTs and PDs are collocated.
struct MeanGains {
  double lambda_pp = 0.0;  // PT_i -> PD_i
  double lambda_sr = 0.0;  // ST -> SR
  double lambda_rd = 0.0;  // SR -> SD
  double lambda_sp = 0.0;  // ST -> PD_i
  double lambda_rp = 0.0;  // SR -> PD_i
  double lambda_pr = 0.0;  // PT_i -> SR
  double lambda_pd = 0.0;  // PT_i -> SD

  friend bool operator==(const MeanGains&, const MeanGains&) = default;
};

MeanGains compute_mean_gains(Point st, Point sr, Point sd, Point pt, Point pd, double rho);

/// Validated experiment parameters. Powers are kept in dB for reporting and in
/// linear units for every computation; the slot duration T is fixed to 1.
struct Scenario {
  int num_primary_pairs = 2;
  double rate_primary = 0.4;
  double rate_secondary = 0.2;
  double bandwidth = 1.0;
  double power_pt_db = 20.0;
  double power_peak_db = 20.0;
  double theta_p = 1e-2;
  double delta = 0.5;
  double path_loss_exp = 4.0;
  Point pos_st{0.0, 0.0};
  Point pos_sr{0.5, 0.0};
  Point pos_sd{1.0, 0.0};
  Point pos_pt{0.5, 1.0};
  Point pos_pd{1.0, 1.0};

  double power_pt = 100.0;
  double power_peak = 100.0;
  MeanGains gains{};

  static constexpr double slot_duration = 1.0;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws ValidationError naming the first offending field.
void validate(const Scenario& s);

/// Recomputes linear powers and mean gains from the dB/geometry fields, then
/// validates. Every Scenario handed to the analytic or Monte Carlo code should
/// come out of here.
Scenario finalize(Scenario s);

/// The reference setup: R_p = 0.4, R_s = 0.2, delta = 0.5, P_PT = 20 dB,
/// rho = 4, ST(0,0) SR(0.5,0) SD(1,0) PT(0.5,1) PD(1,1), L = 2,
/// theta_p = 1e-2, P_t = 20 dB.
Scenario reference_scenario();

Scenario with_theta_p(const Scenario& s, double theta_p);
Scenario with_num_pairs(const Scenario& s, int num_pairs);
Scenario with_peak_power_db(const Scenario& s, double p_peak_db);
Scenario with_delta(const Scenario& s, double delta);

}  // namespace ehcr
