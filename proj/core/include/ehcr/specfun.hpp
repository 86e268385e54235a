#pragma once

namespace ehcr::specfun {

struct SpecFunResult {
  double value = 0.0;
  double est_abs_error = 0.0;  // 0 for closed forms
};

/// Gamma(n) = (n-1)! for integer n >= 1. Throws DomainError for n < 1 or
/// n > 171 (overflow).
double gamma_int(int n);

/// Lower incomplete gamma for integer shape,
///   Upsilon(n, x) = (n-1)! (1 - e^{-x} sum_{k<n} x^k / k!),
/// which is entire in x, so negative arguments are valid (the analytic
/// continuation of int_0^x s^{n-1} e^{-s} ds).
double lower_inc_gamma_int(int n, double x);

/// e^{log_scale} * (e^x - sum_{k<n} x^k / k!).
///
/// The building block behind lower_inc_gamma_int; callers pass the
/// exponential prefactor in log form so that e^{x} and e^{log_scale} never
/// have to be formed separately. Small |x| uses the power series
/// x^n sum_m x^m/(m+n)! to avoid the cancellation of the direct form.
double exp_series_tail(int n, double x, double log_scale = 0.0);

/// Modified Bessel function of the second kind, integer order. Power series
/// for z <= 2, Temme/Steed continued fraction above, then upward recurrence.
/// Throws DomainError for z <= 0 or nu < 0.
double bessel_k(int nu, double z);

/// Whittaker W_{kappa,mu}(z) from
///   W = e^{-z/2} z^kappa / Gamma(mu-kappa+1/2)
///       * int_0^inf e^{-s} s^{mu-kappa-1/2} (1 + s/z)^{mu+kappa-1/2} ds,
/// valid for z > 0 and mu - kappa + 1/2 > 0 (DomainError otherwise).
SpecFunResult whittaker_w(double kappa, double mu, double z);

/// e^{z/2} W_{kappa,mu}(z), same representation without the exponential.
/// Used by the outage closed form, where the exponential cancels.
SpecFunResult whittaker_w_scaled(double kappa, double mu, double z);

}  // namespace ehcr::specfun
