#include "ehcr/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ehcr/errors.hpp"
#include "ehcr/quadrature.hpp"

namespace ehcr::specfun {

double gamma_int(int n) {
  if (n < 1) throw DomainError("gamma_int: n must be >= 1");
  if (n > 171) throw DomainError("gamma_int: (n-1)! overflows for n > 171");
  double f = 1.0;
  for (int k = 2; k < n; ++k) f *= k;
  return f;
}

double exp_series_tail(int n, double x, double log_scale) {
  if (n < 1) throw DomainError("exp_series_tail: n must be >= 1");
  if (x == 0.0) return 0.0;

  if (std::abs(x) <= n + 1.0) {
    // x^n sum_m x^m / (m+n)!; terms shrink monotonically since |x| < m+n+1.
    double sum = 1.0;
    double term = 1.0;
    for (int m = 1; m < 500; ++m) {
      term *= x / (m + n);
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    const double log_lead = log_scale + n * std::log(std::abs(x)) - std::lgamma(n + 1.0);
    const double sign = (x < 0.0 && (n % 2 == 1)) ? -1.0 : 1.0;
    return sign * std::exp(log_lead) * sum;
  }

  // Scale folded into each term so huge |x| with a very negative scale
  // cannot produce inf * 0.
  const double log_abs_x = std::log(std::abs(x));
  double poly = 0.0;
  for (int k = 0; k < n; ++k) {
    const double sign = (x < 0.0 && (k % 2 == 1)) ? -1.0 : 1.0;
    poly += sign * std::exp(log_scale + k * log_abs_x - std::lgamma(k + 1.0));
  }
  return std::exp(log_scale + x) - poly;
}

double lower_inc_gamma_int(int n, double x) {
  if (n < 1) throw DomainError("lower_inc_gamma_int: n must be >= 1");
  return gamma_int(n) * exp_series_tail(n, x, -x);
}

namespace {

constexpr double kEulerGamma = std::numbers::egamma;

// K_0 and K_1 for 0 < z <= 2 from the ascending series.
void bessel_k01_series(double z, double& k0, double& k1) {
  const double y = 0.25 * z * z;
  const double log_half = std::log(0.5 * z);

  double i0 = 0.0, i1 = 0.0, s0 = 0.0, s1 = 0.0;
  double harmonic = 0.0;  // H_k
  double t0 = 1.0;        // y^k / (k!)^2
  double t1 = 1.0;        // y^k / (k! (k+1)!)
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      t0 *= y / (static_cast<double>(k) * k);
      t1 *= y / (static_cast<double>(k) * (k + 1));
      harmonic += 1.0 / k;
    }
    const double harmonic_next = harmonic + 1.0 / (k + 1);
    i0 += t0;
    i1 += t1;
    s0 += harmonic * t0;
    s1 += (harmonic + harmonic_next - 2.0 * kEulerGamma) * t1;
    if (t0 < 1e-18 * i0 && t1 < 1e-18 * i1) break;
  }
  i1 *= 0.5 * z;
  k0 = -(log_half + kEulerGamma) * i0 + s0;
  k1 = 1.0 / z + log_half * i1 - 0.25 * z * s1;
}

// K_0 and K_1 for z > 2: Steed's continued fraction CF2 with Temme's
// normalisation (order 0).
void bessel_k01_cf2(double z, double& k0, double& k1) {
  constexpr double eps = 1e-17;
  double b = 2.0 * (1.0 + z);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 1; i < 100000; ++i) {
    a -= 2 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < eps) break;
  }
  h *= a1;
  k0 = std::sqrt(std::numbers::pi / (2.0 * z)) * std::exp(-z) / s;
  k1 = k0 * (z + 0.5 - h) / z;
}

}  // namespace

double bessel_k(int nu, double z) {
  if (nu < 0) throw DomainError("bessel_k: order must be >= 0");
  if (!(z > 0.0)) throw DomainError("bessel_k: argument must be > 0");
  // K_nu(z) ~ sqrt(pi / 2z) e^{-z} (1 + (4 nu^2 - 1) / 8z + ...) is below the
  // smallest subnormal here.
  if (z > 750.0 && z > static_cast<double>(nu) * nu) return 0.0;
  double k0 = 0.0, k1 = 0.0;
  if (z <= 2.0) {
    bessel_k01_series(z, k0, k1);
  } else {
    bessel_k01_cf2(z, k0, k1);
  }
  if (nu == 0) return k0;
  double prev = k0;
  double cur = k1;
  for (int n = 1; n < nu; ++n) {
    const double next = prev + (2.0 * n / z) * cur;
    prev = cur;
    cur = next;
  }
  return cur;
}

SpecFunResult whittaker_w_scaled(double kappa, double mu, double z) {
  if (!(z > 0.0)) throw DomainError("whittaker_w: z must be > 0");
  const double p = mu - kappa - 0.5;  // exponent of s
  const double q = mu + kappa - 0.5;  // exponent of (1 + s/z)
  if (!(p > -1.0)) {
    throw DomainError("whittaker_w: integral representation needs mu - kappa + 1/2 > 0 (kappa=" +
                      std::to_string(kappa) + ", mu=" + std::to_string(mu) + ")");
  }

  // The integrand carries 1/Gamma(p+1) so that it stays O(1) for large p.
  const double log_norm = -std::lgamma(p + 1.0);
  quad::Options opt;
  opt.rel_tol = 1e-10;
  opt.abs_tol = 0.0;  // integrand is positive; values can be far below any fixed floor

  quad::Result r;
  if (p >= 0.0) {
    auto integrand = [&](double s) {
      if (s <= 0.0) return p == 0.0 ? std::exp(log_norm) : 0.0;
      return std::exp(p * std::log(s) - s + log_norm + q * std::log1p(s / z));
    };
    r = quad::integrate_to_infinity(integrand, 0.0, 1.0, opt);
  } else {
    // s = u^2 removes the integrable singularity s^p at the origin.
    auto integrand = [&](double u) {
      if (u <= 0.0) return p == -0.5 ? 2.0 * std::exp(log_norm) : 0.0;
      const double s = u * u;
      return 2.0 * std::exp((2.0 * p + 1.0) * std::log(u) - s + log_norm + q * std::log1p(s / z));
    };
    r = quad::integrate_to_infinity(integrand, 0.0, 1.0, opt);
  }

  const double zk = std::pow(z, kappa);
  return {zk * r.value, std::abs(zk) * r.abs_error};
}

SpecFunResult whittaker_w(double kappa, double mu, double z) {
  const SpecFunResult scaled = whittaker_w_scaled(kappa, mu, z);
  const double e = std::exp(-0.5 * z);
  return {scaled.value * e, scaled.est_abs_error * e};
}

}  // namespace ehcr::specfun
