#pragma once

// Globally adaptive Gauss-Kronrod (G10/K21) integration over a finite interval
// with absolute tolerance, user breakpoints and a panel-width cap. The Kronrod
// rule itself comes from Boost.Math; refinement order is deterministic.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <type_traits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace fspair::quad {

template <class T>
struct Estimate {
  T value{};
  double error = 0.0;
  bool converged = true;
  /// Refinement stopped because the worst panel is at its rounding floor.
  bool rounding_limited = false;
  std::size_t panels = 0;
};

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  /// Initial panels are no wider than this (oscillation-aware sizing).
  double max_panel_width = std::numeric_limits<double>::infinity();
  std::size_t max_panels = 20000;
};

namespace detail {

template <class T>
struct Panel {
  double lo;
  double hi;
  T value;
  double error;
  double floor;
};

template <class T>
struct ByError {
  bool operator()(const Panel<T>& x, const Panel<T>& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.lo > y.lo;
  }
};

template <class F>
auto kronrod_panel(const F& f, double lo, double hi, double& err, double& floor) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 21>;
  // Map to [-1, 1] ourselves: Boost's non-adaptive path does not rescale the
  // error estimate by the half-width.
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  double l1 = 0.0;
  auto v = Rule::integrate([&](double t) { return f(c + h * t); }, -1.0, 1.0, 0, 0.0, &err, &l1);
  v *= h;
  err *= h;
  l1 *= h;
  // Boost floors the error at 2 eps |value|; also account for cancellation.
  floor = 50.0 * std::numeric_limits<double>::epsilon() * l1;
  err = std::max(err, floor);
  return v;
}

}  // namespace detail

/// Integrate f over [a, b]. Breakpoints inside (a, b) always become panel
/// edges. When the panel budget is exhausted the best estimate is returned
/// with converged = false.
template <class F>
auto integrate(const F& f, double a, double b, const Options& opt = {},
               std::span<const double> breakpoints = {}) {
  using T = std::decay_t<decltype(f(0.0))>;
  Estimate<T> out;
  if (!(b > a)) return out;

  std::vector<double> edges{a};
  std::vector<double> bp(breakpoints.begin(), breakpoints.end());
  std::sort(bp.begin(), bp.end());
  for (double x : bp)
    if (x > a && x < b && x > edges.back()) edges.push_back(x);
  edges.push_back(b);

  std::priority_queue<detail::Panel<T>, std::vector<detail::Panel<T>>, detail::ByError<T>> heap;
  auto push = [&](double lo, double hi) {
    double err = 0.0, floor = 0.0;
    T v = detail::kronrod_panel(f, lo, hi, err, floor);
    heap.push({lo, hi, v, err, floor});
  };
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double lo = edges[i], hi = edges[i + 1];
    const double width = hi - lo;
    std::size_t n = 1;
    if (std::isfinite(opt.max_panel_width) && width > opt.max_panel_width)
      n = static_cast<std::size_t>(std::ceil(width / opt.max_panel_width));
    for (std::size_t j = 0; j < n; ++j)
      push(lo + width * j / n, j + 1 == n ? hi : lo + width * (j + 1) / n);
  }

  auto totals = [&heap] {
    // Sum in a fixed (position) order so that results do not depend on the
    // refinement history.
    auto copy = heap;
    std::vector<detail::Panel<T>> panels;
    panels.reserve(copy.size());
    while (!copy.empty()) {
      panels.push_back(copy.top());
      copy.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const auto& x, const auto& y) { return x.lo < y.lo; });
    T v{};
    double e = 0.0;
    for (const auto& p : panels) {
      v += p.value;
      e += p.error;
    }
    return std::pair<T, double>{v, e};
  };

  double total_err = 0.0;
  T total{};
  {
    auto copy = heap;
    while (!copy.empty()) {
      total_err += copy.top().error;
      total += copy.top().value;
      copy.pop();
    }
  }
  while (true) {
    const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    if (total_err <= target) break;
    if (heap.size() >= opt.max_panels) {
      out.converged = false;
      break;
    }
    if (heap.top().error <= heap.top().floor) {
      // Splitting cannot reduce an error that is pure rounding.
      out.converged = false;
      out.rounding_limited = true;
      break;
    }
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      // Interval can no longer be split in double precision.
      heap.push({worst.lo, worst.hi, worst.value, 0.0, 0.0});
      total_err -= worst.error;
      out.converged = false;
      continue;
    }
    double e1 = 0.0, e2 = 0.0, f1 = 0.0, f2 = 0.0;
    T v1 = detail::kronrod_panel(f, worst.lo, mid, e1, f1);
    T v2 = detail::kronrod_panel(f, mid, worst.hi, e2, f2);
    heap.push({worst.lo, mid, v1, e1, f1});
    heap.push({mid, worst.hi, v2, e2, f2});
    total += v1 + v2 - worst.value;
    total_err += e1 + e2 - worst.error;
  }
  auto [v, e] = totals();
  out.value = v;
  out.error = e;
  out.panels = heap.size();
  return out;
}

}  // namespace fspair::quad
