#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace ehcr::quad {

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 1e-30;
  int max_intervals = 4000;
};

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
};

namespace detail {

inline constexpr int kOrder = 16;

struct Rule {
  std::array<double, kOrder> nodes{};
  std::array<double, kOrder> weights{};
};

/// Gauss-Legendre nodes on [-1, 1] by Newton iteration on P_n.
inline Rule make_gauss_legendre() {
  Rule rule;
  constexpr int n = kOrder;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

inline const Rule& gauss_legendre() {
  static const Rule rule = make_gauss_legendre();
  return rule;
}

template <class F>
double gauss(F& f, double a, double b) {
  const Rule& rule = gauss_legendre();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (int i = 0; i < kOrder; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

struct Interval {
  double a;
  double b;
  double left;   // rule applied on [a, m]
  double right;  // rule applied on [m, b]
  double error;

  bool operator<(const Interval& other) const { return error < other.error; }
};

}  // namespace detail

/// Globally adaptive Gauss-Legendre quadrature on [a, b]. Each interval is
/// scored by |G[a,b] - (G[a,m] + G[m,b])|; the worst one is bisected until the
/// summed estimate meets max(abs_tol, rel_tol * |value|).
template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {}) {
  Result res;
  if (a == b) return res;

  auto make = [&](double lo, double hi, double whole) {
    const double m = 0.5 * (lo + hi);
    const double l = detail::gauss(f, lo, m);
    const double r = detail::gauss(f, m, hi);
    res.evaluations += 2 * detail::kOrder;
    return detail::Interval{lo, hi, l, r, std::abs(whole - (l + r))};
  };

  const double whole = detail::gauss(f, a, b);
  res.evaluations += detail::kOrder;

  std::priority_queue<detail::Interval> heap;
  heap.push(make(a, b, whole));
  double value = heap.top().left + heap.top().right;
  double error = heap.top().error;

  int intervals = 1;
  while (error > std::max(opt.abs_tol, opt.rel_tol * std::abs(value)) &&
         intervals < opt.max_intervals) {
    const detail::Interval worst = heap.top();
    heap.pop();
    const double m = 0.5 * (worst.a + worst.b);
    if (!(worst.a < m && m < worst.b)) {
      // Interval can no longer be split in floating point.
      heap.push(worst);
      break;
    }
    const detail::Interval lo = make(worst.a, m, worst.left);
    const detail::Interval hi = make(m, worst.b, worst.right);
    value += (lo.left + lo.right + hi.left + hi.right) - (worst.left + worst.right);
    error += lo.error + hi.error - worst.error;
    heap.push(lo);
    heap.push(hi);
    ++intervals;
  }

  // Re-sum to shed the drift of the running updates.
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().left + heap.top().right;
    error += heap.top().error;
    heap.pop();
  }
  res.value = value;
  res.abs_error = error;
  return res;
}

/// Integral over [a, inf) for integrands that eventually decay. The range is
/// covered by panels of doubling width starting at `scale`; integration stops
/// once a panel contributes less than tail_tol times the running total.
template <class F>
Result integrate_to_infinity(F&& f, double a, double scale = 1.0, const Options& opt = {},
                             double tail_tol = 1e-30) {
  Result res;
  double lo = a;
  double width = scale;
  double total = 0.0;
  for (int panel = 0; panel < 128; ++panel) {
    const double hi = lo + width;
    Options panel_opt = opt;
    panel_opt.abs_tol = std::max(opt.abs_tol, 0.1 * opt.rel_tol * std::abs(total));
    const Result r = integrate(f, lo, hi, panel_opt);
    res.evaluations += r.evaluations;
    res.abs_error += r.abs_error;
    const double previous = total;
    total += r.value;
    if (panel > 0 && std::abs(r.value) <= tail_tol * std::abs(previous)) break;
    lo = hi;
    width *= 2.0;
    if (!std::isfinite(lo + width)) break;
  }
  res.value = total;
  return res;
}

}  // namespace ehcr::quad
