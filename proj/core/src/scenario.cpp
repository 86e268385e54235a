#include "ehcr/scenario.hpp"

#include <cmath>
#include <string>

#include "ehcr/errors.hpp"

namespace ehcr {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double mean_gain(Point a, Point b, double rho) {
  if (!(rho > 0.0)) throw ValidationError("rho: path-loss exponent must be positive");
  const double d = distance(a, b);
  if (!(d > 0.0)) throw ValidationError("positions coincide: mean gain would be infinite");
  return std::pow(d, -rho);
}

MeanGains compute_mean_gains(Point st, Point sr, Point sd, Point pt, Point pd, double rho) {
  MeanGains g;
  g.lambda_pp = mean_gain(pt, pd, rho);
  g.lambda_sr = mean_gain(st, sr, rho);
  g.lambda_rd = mean_gain(sr, sd, rho);
  g.lambda_sp = mean_gain(st, pd, rho);
  g.lambda_rp = mean_gain(sr, pd, rho);
  g.lambda_pr = mean_gain(pt, sr, rho);
  g.lambda_pd = mean_gain(pt, sd, rho);
  return g;
}

namespace {

void require(bool ok, const char* field, const std::string& what) {
  if (!ok) throw ValidationError(std::string(field) + ": " + what);
}

}  // namespace

void validate(const Scenario& s) {
  require(s.num_primary_pairs >= 1, "L", "must be at least 1");
  require(std::isfinite(s.rate_primary) && s.rate_primary >= 0.0, "rate_primary",
          "must be finite and >= 0");
  require(std::isfinite(s.rate_secondary) && s.rate_secondary >= 0.0, "rate_secondary",
          "must be finite and >= 0");
  require(std::isfinite(s.bandwidth) && s.bandwidth > 0.0, "bandwidth", "must be > 0");
  require(std::isfinite(s.power_pt_db), "p_pt_db", "must be finite");
  require(std::isfinite(s.power_peak_db), "p_peak_db", "must be finite");
  require(s.theta_p >= 0.0 && s.theta_p < 1.0, "theta_p", "must lie in [0, 1)");
  require(s.delta >= 0.0 && s.delta <= 1.0, "delta", "must lie in [0, 1]");
  require(std::isfinite(s.path_loss_exp) && s.path_loss_exp > 0.0, "rho", "must be > 0");

  const std::pair<const char*, Point> nodes[] = {{"pos_st", s.pos_st},
                                                 {"pos_sr", s.pos_sr},
                                                 {"pos_sd", s.pos_sd},
                                                 {"pos_pt", s.pos_pt},
                                                 {"pos_pd", s.pos_pd}};
  for (const auto& [name, p] : nodes) {
    require(std::isfinite(p.x) && std::isfinite(p.y), name, "coordinates must be finite");
  }
  for (std::size_t i = 0; i < std::size(nodes); ++i) {
    for (std::size_t j = i + 1; j < std::size(nodes); ++j) {
      require(!(nodes[i].second == nodes[j].second), nodes[j].first,
              std::string("coincides with ") + nodes[i].first);
    }
  }
}

Scenario finalize(Scenario s) {
  validate(s);
  s.power_pt = db_to_linear(s.power_pt_db);
  s.power_peak = db_to_linear(s.power_peak_db);
  s.gains = compute_mean_gains(s.pos_st, s.pos_sr, s.pos_sd, s.pos_pt, s.pos_pd,
                               s.path_loss_exp);
  return s;
}

Scenario reference_scenario() { return finalize(Scenario{}); }

Scenario with_theta_p(const Scenario& s, double theta_p) {
  Scenario out = s;
  out.theta_p = theta_p;
  return finalize(out);
}

Scenario with_num_pairs(const Scenario& s, int num_pairs) {
  Scenario out = s;
  out.num_primary_pairs = num_pairs;
  return finalize(out);
}

Scenario with_peak_power_db(const Scenario& s, double p_peak_db) {
  Scenario out = s;
  out.power_peak_db = p_peak_db;
  return finalize(out);
}

Scenario with_delta(const Scenario& s, double delta) {
  Scenario out = s;
  out.delta = delta;
  return finalize(out);
}

}  // namespace ehcr
