#include "ehcr/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ehcr/errors.hpp"
#include "ehcr/quadrature.hpp"
#include "ehcr/specfun.hpp"

namespace ehcr {

namespace sf = specfun;

namespace {

// Beyond this (|t|/a)^L the difference I1 - I2 has lost too many digits.
constexpr double kMaxClosedFormAmplification = 1e6;
constexpr double kProbabilitySlack = 1e-9;

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha: must lie in (0, 1)");
}

double checked_probability(double p, const char* what) {
  if (!(p >= -kProbabilitySlack && p <= 1.0 + kProbabilitySlack)) {
    throw ConsistencyError(std::string(what) + " evaluated to " + std::to_string(p) +
                           ", which is not a probability");
  }
  return std::clamp(p, 0.0, 1.0);
}

// 1 - (1 + x)^{-L}
double one_minus_pow_neg(double x, int L) { return -std::expm1(-L * std::log1p(x)); }

// I1 / d^L and I2 / d^L.
double i1_over_dl(double xi, const AnalyticTerms& T) {
  const int L = T.num_pairs;
  const double z = xi * T.d / (T.b * T.c);
  const double w = sf::whittaker_w_scaled(-L, 0.5, z).value;
  return 0.5 * T.b * T.c * (1.0 - sf::gamma_int(L + 1) * w);
}

double i2_over_dl(double xi, const AnalyticTerms& T) {
  const int L = T.num_pairs;
  const double f2 = T.f * T.f;
  const double z = xi * T.d * f2;
  const double coeff = 1.0 / (T.t * T.b * T.f);
  double sum = 0.0;
  double coeff_pow = 1.0;  // coeff^j / j!
  for (int j = 0; j < L; ++j) {
    if (j > 0) coeff_pow *= coeff / j;
    const double xi_pow = std::pow(xi, 0.5 * (j + 2));
    const double lead = sf::gamma_int(j + 1) * std::pow(T.f * std::sqrt(xi), -j - 2);
    const double w =
        sf::whittaker_w_scaled(-0.5 * (2 * L + j), 0.5 * (j + 1), z).value;
    const double tail = sf::gamma_int(L + j + 1) / (xi * f2) * std::pow(T.d, 0.5 * j) * w;
    sum += coeff_pow * xi_pow * (lead - tail);
  }
  return 0.5 * sum;
}

// I = 1 - E_Z[(1 + xi d / (b Z))^{-L}], Z = G1 + G2.
double term_i_quadrature(double xi, const AnalyticTerms& T) {
  const int L = T.num_pairs;
  const double k = xi * T.d / T.b;
  auto integrand = [&](double z) {
    if (z <= 0.0) return 0.0;
    return pdf_z(z, T) * std::exp(-L * std::log1p(k / z));
  };
  quad::Options opt;
  opt.rel_tol = 1e-12;
  const double scale = 0.25 * (L * T.a + T.c);
  const double mass = quad::integrate_to_infinity(integrand, 0.0, scale, opt).value;
  return 1.0 - mass;
}

}  // namespace

double xi_s(double rate_s, double bandwidth, int num_pairs, double alpha) {
  require_alpha(alpha);
  if (!(bandwidth > 0.0)) throw ValidationError("bandwidth: must be > 0");
  if (num_pairs < 1) throw ValidationError("L: must be at least 1");
  return std::expm1(std::log(2.0) * 2.0 * rate_s / ((1.0 - alpha) * bandwidth * num_pairs));
}

AnalyticTerms make_terms(const Scenario& s, const PowerBudget& budget, double alpha) {
  require_alpha(alpha);
  if (!(budget.p_sm > 0.0)) throw ValidationError("p_sm: ST has no transmit power");
  if (!(s.delta > 0.0)) throw ValidationError("delta: relay harvests nothing");

  AnalyticTerms T;
  T.num_pairs = s.num_primary_pairs;
  T.alpha = alpha;
  T.a = s.power_pt * s.gains.lambda_pr;
  T.b = 2.0 * alpha * s.delta * s.gains.lambda_rd / (1.0 - alpha);
  T.c = budget.p_sm * s.gains.lambda_sr;
  T.d = s.power_pt * s.gains.lambda_pd;
  if (std::abs(T.c - T.a) <= 1e-9 * std::max(T.a, T.c)) {
    T.c = T.c >= T.a ? T.a * (1.0 + 1e-9) : T.a * (1.0 - 1e-9);
  }
  T.t = T.a * T.c / (T.c - T.a);
  T.theta = 1.0 / T.c + 1.0 / T.t;
  T.f = std::sqrt(T.theta / T.b);
  T.xi_s = xi_s(s.rate_secondary, s.bandwidth, s.num_primary_pairs, alpha);
  T.p_r = budget.p_r;
  T.p_r_star = (1.0 - alpha) * budget.p_r / (2.0 * alpha * s.delta);
  T.lambda_rd = s.gains.lambda_rd;

  // theta = 1/c + 1/t reproduces 1/a only up to the rounding of 1/c, which
  // dominates when c << a.
  const double eps = std::numeric_limits<double>::epsilon();
  const double theta_tol = std::max(1e-12, 8.0 * eps * (1.0 + T.a / T.c));
  if (!(std::abs(T.theta * T.a - 1.0) <= theta_tol)) {
    throw ConsistencyError("analytic terms: theta * a != 1");
  }
  if (!(std::abs(T.f * T.f * T.b / T.theta - 1.0) <= 1e-12)) {
    throw ConsistencyError("analytic terms: f^2 b != theta");
  }
  return T;
}

double cdf_gamma_sr(double xi, const AnalyticTerms& T) {
  if (xi <= 0.0) return 0.0;
  return one_minus_pow_neg(T.a * xi / T.c, T.num_pairs);
}

double prob_h1(const AnalyticTerms& T) {
  const double p = T.p_r_star;
  if (p <= 0.0) return 1.0;
  if (!std::isfinite(p)) return 0.0;
  const int L = T.num_pairs;
  // P(G1 + G2 < P*) = Upsilon(L, P*/a)/Gamma(L)
  //                   - e^{-P*/c} t^L Upsilon(L, P*/t) / (a^L Gamma(L))
  // with every exponential folded into exp_series_tail.
  const double head = sf::exp_series_tail(L, p / T.a, -p / T.a);
  const double cross = std::pow(T.t / T.a, L) * sf::exp_series_tail(L, p / T.t, -p / T.a);
  return checked_probability(1.0 - (head - cross), "P_H1");
}

double term_i1(double xi, const AnalyticTerms& T) {
  return i1_over_dl(xi, T) * std::pow(T.d, T.num_pairs);
}

double term_i2(double xi, const AnalyticTerms& T) {
  return i2_over_dl(xi, T) * std::pow(T.d, T.num_pairs);
}

bool term_i_uses_closed_form(const AnalyticTerms& T) {
  return std::pow(std::abs(T.t) / T.a, T.num_pairs) <= kMaxClosedFormAmplification;
}

double term_i(double xi, const AnalyticTerms& T) {
  if (xi <= 0.0) return 0.0;
  double value = 0.0;
  if (term_i_uses_closed_form(T)) {
    const double prefactor = 2.0 * std::pow(T.t / T.a, T.num_pairs) / (T.b * T.c);
    value = prefactor * (i1_over_dl(xi, T) - i2_over_dl(xi, T));
  } else {
    value = term_i_quadrature(xi, T);
  }
  return checked_probability(value, "I");
}

double cdf_gamma_sd(double xi, const AnalyticTerms& T) {
  if (!(T.p_r > 0.0)) return 1.0;
  if (xi <= 0.0) return 0.0;
  const double i = term_i(xi, T);
  const double ph1 = prob_h1(T);
  const double j = one_minus_pow_neg(T.d * xi / (T.p_r * T.lambda_rd), T.num_pairs);
  return checked_probability(i * (1.0 - ph1) + j * ph1, "F_SD");
}

double pdf_z(double z, const AnalyticTerms& T) {
  if (z <= 0.0) return 0.0;
  const int L = T.num_pairs;
  // t^L e^{-z/c} Upsilon(L, z/t) / (Gamma(L) a^L c)
  return std::pow(T.t / T.a, L) / T.c * sf::exp_series_tail(L, z / T.t, -z / T.a);
}

double pdf_q(double q, const AnalyticTerms& T) {
  if (q < 0.0) return 0.0;
  const int L = T.num_pairs;
  const double prefactor = 2.0 * std::pow(T.t / T.a, L) / (T.b * T.c);
  if (q == 0.0) {
    // Small-argument limits of K_0 and x^j K_j(x).
    double bracket = 0.5 * std::log(T.c / T.a);
    for (int j = 1; j < L; ++j) bracket -= std::pow(T.a / T.t, j) / (2.0 * j);
    return prefactor * bracket;
  }
  double bracket = sf::bessel_k(0, 2.0 * std::sqrt(q / (T.b * T.c)));
  const double arg = 2.0 * std::sqrt(q * T.theta / T.b);
  const double ratio = std::sqrt(q / (T.b * T.theta)) / T.t;
  double coeff = 1.0;  // ratio^j / j!
  for (int j = 0; j < L; ++j) {
    if (j > 0) coeff *= ratio / j;
    bracket -= coeff * sf::bessel_k(j, arg);
  }
  return std::max(prefactor * bracket, 0.0);
}

double secondary_outage_analytic(const Scenario& s, double alpha) {
  return AnalyticModel(s).outage(alpha);
}

double secondary_outage_exact(const Scenario& s, double alpha) {
  return AnalyticModel(s).outage_exact(alpha);
}

AnalyticModel::AnalyticModel(Scenario s) : scenario_(std::move(s)), budget_(capped_powers(scenario_)) {}

AnalyticTerms AnalyticModel::terms(double alpha) const { return make_terms(scenario_, budget_, alpha); }

double AnalyticModel::outage(double alpha) const {
  require_alpha(alpha);
  if (!(budget_.p_sm > 0.0)) return 1.0;
  const double xi = xi_s(scenario_.rate_secondary, scenario_.bandwidth,
                         scenario_.num_primary_pairs, alpha);
  if (xi <= 0.0) return 0.0;
  if (!(scenario_.delta > 0.0) || !(budget_.p_r > 0.0)) return 1.0;

  const AnalyticTerms T = terms(alpha);
  const double f_sr = cdf_gamma_sr(T.xi_s, T);
  const double f_sd = cdf_gamma_sd(T.xi_s, T);
  return checked_probability(1.0 - (1.0 - f_sr) * (1.0 - f_sd), "P_out");
}

double AnalyticModel::outage_exact(double alpha) const {
  require_alpha(alpha);
  if (!(budget_.p_sm > 0.0)) return 1.0;
  const Scenario& s = scenario_;
  const int L = s.num_primary_pairs;
  const double xi = xi_s(s.rate_secondary, s.bandwidth, L, alpha);
  if (xi <= 0.0) return 0.0;
  if (!(s.delta > 0.0) || !(budget_.p_r > 0.0)) return 1.0;

  const double a = s.power_pt * s.gains.lambda_pr;
  const double c = budget_.p_sm * s.gains.lambda_sr;
  const double d = s.power_pt * s.gains.lambda_pd;
  const double kappa = 2.0 * alpha * s.delta / (1.0 - alpha);
  const double p_r = budget_.p_r;
  const double z_sat = p_r / kappa;  // harvest saturates at P_R beyond this
  const double lrd = s.gains.lambda_rd;

  // P(gamma_SD >= xi | G1 + G2 = z)
  auto sd_success = [&](double z) {
    const double p_rm = std::min(kappa * z, p_r);
    if (!(p_rm > 0.0)) return 0.0;
    return std::exp(-L * std::log1p(xi * d / (lrd * p_rm)));
  };
  const double sd_success_saturated = sd_success(z_sat);

  quad::Options opt;
  opt.rel_tol = 1e-11;

  // Given G1 = g1: E over G2 >= xi g1 of sd_success(g1 + G2).
  auto inner = [&](double g1) {
    const double z0 = (1.0 + xi) * g1;
    const double u_sat = z_sat - z0;
    const double mass_at_edge = std::exp(-xi * g1 / c);
    if (u_sat <= 0.0) return mass_at_edge * sd_success_saturated;
    auto integrand = [&](double u) { return std::exp(-u / c) / c * sd_success(z0 + u); };
    const double below = quad::integrate(integrand, 0.0, u_sat, opt).value;
    return mass_at_edge * (below + std::exp(-u_sat / c) * sd_success_saturated);
  };

  const double log_norm = -L * std::log(a) - std::lgamma(static_cast<double>(L));
  auto outer = [&](double g1) {
    if (g1 <= 0.0) return L == 1 ? std::exp(log_norm) * inner(0.0) : 0.0;
    return std::exp(log_norm + (L - 1) * std::log(g1) - g1 / a) * inner(g1);
  };

  const double g_kink = z_sat / (1.0 + xi);
  const double head = quad::integrate(outer, 0.0, g_kink, opt).value;
  const double tail = quad::integrate_to_infinity(outer, g_kink, std::max(a, 1e-3 * g_kink), opt).value;
  return checked_probability(1.0 - (head + tail), "exact P_out");
}

}  // namespace ehcr
