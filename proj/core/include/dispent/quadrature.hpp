#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dispent/errors.hpp"

namespace dispent {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long evaluations = 0;
};

struct ComplexQuadratureResult {
  std::complex<double> value;
  double abs_error_estimate = 0.0;
  long evaluations = 0;
};

struct QuadratureOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-14;
  int max_intervals = 5000;
};

using RealFunction = std::function<double(double)>;

QuadratureResult integrate_interval(const RealFunction& f, double a, double b, const QuadratureOptions& opt = {});

// int_0^inf f, substituting w = scale * t / (1 - t).
QuadratureResult integrate_semi_infinite(const RealFunction& f, const QuadratureOptions& opt = {},
                                         double scale = 1.0);

// int_0^inf f with the given interior breakpoints (positive, any order); every
// sub-interval joins one global adaptive queue.
QuadratureResult integrate_semi_infinite(const RealFunction& f, std::vector<double> breakpoints,
                                         const QuadratureOptions& opt = {});

// int_0^inf f(x) sin(freq x) dx by panels between the zeros of the sine,
// accelerated with the Wynn epsilon algorithm.
QuadratureResult integrate_oscillatory(const RealFunction& f, double freq, const QuadratureOptions& opt = {});

// int_0^inf int_0^inf F(k, q) sin(a k) sin(b q) dq dk, nested panel summation.
QuadratureResult integrate_oscillatory_2d(const std::function<double(double, double)>& F, double a, double b,
                                          const QuadratureOptions& opt = {});

// int_{t_min}^inf [g(t) + g(-t)] dt for g evaluated along a vertical line.
// The range is truncated where |g| < 1e-12 of its peak, and the power-law tail
// t^-p (p = tail_exponent_hint > 1) beyond the cut is added to value and error.
ComplexQuadratureResult integrate_vertical_line(const std::function<std::complex<double>(double)>& g,
                                                double tail_exponent_hint, const QuadratureOptions& opt = {},
                                                double t_min = 0.0, double t_scale = 1.0);

struct SeriesLimit {
  double value;
  double error;
};

// Wynn epsilon extrapolation of a sequence of partial sums.
SeriesLimit wynn_epsilon(const std::vector<double>& partial_sums);

namespace detail {

// 21-point Gauss-Kronrod rule; odd-indexed abscissae are the 10-point Gauss nodes.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452, 0.930157491355708226001207180059508,
    0.865063366688984510732096688423493, 0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784, 0.294392862701460198131126603103866,
    0.148874338981631210884826001129720, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390, 0.054755896574351996031381300244580,
    0.075039674810919952767043140916190, 0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208983463172, 0.134709217311473325928054001771707, 0.142775938577060080797094273138717,
    0.147739104901338491374841515972068, 0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697, 0.219086362515982043995534934228163,
    0.269266719309996355091226921569469, 0.295524224714752870173892994651338};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
inline double magnitude(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// Scalar carried by NumericalError::best_estimate: the signed value for real integrals.
inline double best_scalar(double v) { return v; }
inline double best_scalar(const std::complex<double>& v) { return std::abs(v); }
inline double best_scalar(const Eigen::VectorXd& v) { return magnitude(v); }

template <class V>
struct Panel {
  double a, b;
  V value;
  double error;
  double abs_value;
};

template <class V, class F>
Panel<V> gk21(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const V fc = f(c);
  V resk = fc * kWgk[10];
  V resg = fc * 0.0;
  std::array<V, 10> f1, f2;
  for (int j = 0; j < 10; ++j) {
    const double dx = h * kXgk[static_cast<std::size_t>(j)];
    f1[static_cast<std::size_t>(j)] = f(c - dx);
    f2[static_cast<std::size_t>(j)] = f(c + dx);
    const V s = f1[static_cast<std::size_t>(j)] + f2[static_cast<std::size_t>(j)];
    resk = resk + s * kWgk[static_cast<std::size_t>(j)];
    if (j % 2 == 1) resg = resg + s * kWg[static_cast<std::size_t>(j / 2)];
  }
  const V mean = resk * 0.5;
  double resasc = kWgk[10] * magnitude(V(fc - mean));
  double resabs = kWgk[10] * magnitude(fc);
  for (std::size_t j = 0; j < 10; ++j) {
    resasc += kWgk[j] * (magnitude(V(f1[j] - mean)) + magnitude(V(f2[j] - mean)));
    resabs += kWgk[j] * (magnitude(f1[j]) + magnitude(f2[j]));
  }
  const double ah = std::abs(h);
  resasc *= ah;
  resabs *= ah;
  double err = magnitude(V((resk - resg) * h));
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {a, b, V(resk * h), err, resabs};
}

struct AdaptiveStats {
  double error = 0.0;
  long evaluations = 0;
};

// Globally adaptive GK21 over an initial partition. Deterministic: panels are
// refined in order of error with ties broken by position, and the final sum is
// taken in left-to-right order.
template <class V, class F>
V adaptive(F&& f, const std::vector<double>& cuts, const QuadratureOptions& opt, AdaptiveStats& stats) {
  auto cmp = [](const Panel<V>& x, const Panel<V>& y) {
    return x.error < y.error || (x.error == y.error && x.a > y.a);
  };
  std::priority_queue<Panel<V>, std::vector<Panel<V>>, decltype(cmp)> queue(cmp);
  std::vector<Panel<V>> done;
  long evals = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    queue.push(gk21<V>(f, cuts[i], cuts[i + 1]));
    evals += 21;
  }
  auto totals = [&](V& value, double& err) {
    std::vector<Panel<V>> all = done;
    auto copy = queue;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel<V>& x, const Panel<V>& y) { return x.a < y.a; });
    value = all.front().value * 0.0;
    err = 0.0;
    for (const auto& p : all) {
      value = value + p.value;
      err += p.error;
    }
  };
  V value;
  double err = 0.0;
  int intervals = static_cast<int>(queue.size());
  double running_err = 0.0;
  V running = queue.top().value * 0.0;
  {
    auto copy = queue;
    while (!copy.empty()) {
      running = running + copy.top().value;
      running_err += copy.top().error;
      copy.pop();
    }
  }
  while (true) {
    const double tol = std::max(opt.abs_tol, opt.rel_tol * magnitude(running));
    if (running_err <= tol || queue.empty()) break;
    if (intervals >= opt.max_intervals) {
      totals(value, err);
      stats = {err, evals};
      throw NumericalError("adaptive quadrature: interval limit reached", best_scalar(value), err);
    }
    Panel<V> worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        std::abs(worst.b - worst.a) < 64.0 * std::numeric_limits<double>::epsilon() *
                                          std::max(std::abs(worst.a), std::abs(worst.b))) {
      done.push_back(worst);
      continue;
    }
    Panel<V> left = gk21<V>(f, worst.a, mid);
    Panel<V> right = gk21<V>(f, mid, worst.b);
    evals += 42;
    running = running - worst.value + left.value + right.value;
    running_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++intervals;
  }
  totals(value, err);
  const double tol = std::max(opt.abs_tol, opt.rel_tol * magnitude(value));
  stats = {err, evals};
  if (!(err <= tol)) throw NumericalError("adaptive quadrature: roundoff prevents convergence", best_scalar(value), err);
  return value;
}

}  // namespace detail

// Vector-valued semi-infinite integral, same contract as the scalar version.
struct VectorQuadratureResult {
  Eigen::VectorXd value;
  double abs_error_estimate = 0.0;
  long evaluations = 0;
};

VectorQuadratureResult integrate_semi_infinite_vector(const std::function<Eigen::VectorXd(double)>& f,
                                                      std::vector<double> breakpoints,
                                                      const QuadratureOptions& opt = {});

}  // namespace dispent
