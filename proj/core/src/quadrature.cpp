#include "dispent/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dispent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Maps u in [j, j+1) onto the j-th sub-interval of [0, inf) delimited by the
// breakpoints; the last unit interval is stretched to infinity.
struct SemiInfiniteMap {
  std::vector<double> pts;  // 0 = p0 < p1 < ... < pn
  double tail_scale;

  // Returns x and writes the Jacobian; x = inf signals the far end.
  double operator()(double u, double& jac) const {
    const int n = static_cast<int>(pts.size()) - 1;
    int j = static_cast<int>(std::floor(u));
    j = std::clamp(j, 0, n);
    const double s = u - j;
    if (j < n) {
      jac = pts[j + 1] - pts[j];
      return pts[j] + s * jac;
    }
    const double one_minus = 1.0 - s;
    jac = tail_scale / (one_minus * one_minus);
    return pts[n] + tail_scale * s / one_minus;
  }
};

SemiInfiniteMap make_map(std::vector<double> breakpoints, double scale) {
  std::vector<double> pts{0.0};
  std::sort(breakpoints.begin(), breakpoints.end());
  for (double b : breakpoints)
    if (b > 0.0 && std::isfinite(b) && b > pts.back() * (1.0 + 1e-12)) pts.push_back(b);
  const double tail = pts.size() > 1 ? pts.back() : scale;
  return {pts, tail};
}

std::vector<double> unit_cuts(const SemiInfiniteMap& m) {
  std::vector<double> cuts;
  for (std::size_t i = 0; i < m.pts.size() + 1; ++i) cuts.push_back(static_cast<double>(i));
  return cuts;
}

}  // namespace

QuadratureResult integrate_interval(const RealFunction& f, double a, double b, const QuadratureOptions& opt) {
  if (a == b) return {0.0, 0.0, 0};
  detail::AdaptiveStats st;
  auto fn = [&](double x) { return f(x); };
  const double v = detail::adaptive<double>(fn, {a, b}, opt, st);
  return {v, st.error, st.evaluations};
}

QuadratureResult integrate_semi_infinite(const RealFunction& f, std::vector<double> breakpoints,
                                         const QuadratureOptions& opt) {
  const SemiInfiniteMap map = make_map(std::move(breakpoints), 1.0);
  auto fn = [&](double u) {
    double jac = 0.0;
    const double x = map(u, jac);
    if (!std::isfinite(x) || !std::isfinite(jac)) return 0.0;
    return f(x) * jac;
  };
  detail::AdaptiveStats st;
  const double v = detail::adaptive<double>(fn, unit_cuts(map), opt, st);
  return {v, st.error, st.evaluations};
}

QuadratureResult integrate_semi_infinite(const RealFunction& f, const QuadratureOptions& opt, double scale) {
  if (!(scale > 0.0)) throw ValidationError("integrate_semi_infinite: scale must be positive");
  return integrate_semi_infinite(f, std::vector<double>{scale}, opt);
}

VectorQuadratureResult integrate_semi_infinite_vector(const std::function<Eigen::VectorXd(double)>& f,
                                                      std::vector<double> breakpoints,
                                                      const QuadratureOptions& opt) {
  const SemiInfiniteMap map = make_map(std::move(breakpoints), 1.0);
  Eigen::Index dim = -1;
  auto fn = [&](double u) -> Eigen::VectorXd {
    double jac = 0.0;
    const double x = map(u, jac);
    if (!std::isfinite(x) || !std::isfinite(jac)) {
      if (dim < 0) dim = f(1.0).size();
      return Eigen::VectorXd::Zero(dim);
    }
    Eigen::VectorXd v = f(x) * jac;
    dim = v.size();
    return v;
  };
  detail::AdaptiveStats st;
  Eigen::VectorXd v = detail::adaptive<Eigen::VectorXd>(fn, unit_cuts(map), opt, st);
  return {v, st.error, st.evaluations};
}

SeriesLimit wynn_epsilon(const std::vector<double>& partial_sums) {
  const std::size_t n = partial_sums.size();
  if (n == 0) throw ValidationError("wynn_epsilon: empty sequence");
  if (n < 3) return {partial_sums.back(), n == 2 ? std::abs(partial_sums[1] - partial_sums[0]) : kInf};

  const std::size_t m = std::min<std::size_t>(n, 50);
  std::vector<double> prev(m + 1, 0.0);
  std::vector<double> cur(partial_sums.end() - static_cast<std::ptrdiff_t>(m), partial_sums.end());
  double last_even = cur.back();
  SeriesLimit best{cur.back(), std::abs(cur[m - 1] - cur[m - 2])};
  for (std::size_t col = 1; cur.size() > 1; ++col) {
    std::vector<double> next(cur.size() - 1);
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const double d = cur[i + 1] - cur[i];
      if (d == 0.0 || !std::isfinite(d)) return best;
      next[i] = prev[i + 1] + 1.0 / d;
    }
    if (col % 2 == 0) {
      const double v = next.back();
      if (!std::isfinite(v)) return best;
      const double e = std::abs(v - last_even);
      if (e < best.error) best = {v, e};
      last_even = v;
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return best;
}

QuadratureResult integrate_oscillatory(const RealFunction& f, double freq, const QuadratureOptions& opt) {
  if (!(freq > 0.0)) throw ValidationError("integrate_oscillatory: frequency must be positive");
  const double width = M_PI / freq;
  constexpr int kMinPanels = 8;
  constexpr int kMaxPanels = 4000;

  QuadratureOptions panel_opt;
  panel_opt.rel_tol = std::max(1e-13, opt.rel_tol * 1e-3);
  panel_opt.abs_tol = std::max(opt.abs_tol * 1e-3, 1e-300);
  panel_opt.max_intervals = opt.max_intervals;

  std::vector<double> sums;
  std::vector<double> terms;
  double panel_err = 0.0;
  long evals = 0;
  double prev_estimate = kInf;
  double sum = 0.0;
  auto g = [&](double x) { return f(x) * std::sin(freq * x); };
  for (int j = 0; j < kMaxPanels; ++j) {
    // Panels far below the running total only need absolute accuracy relative to it.
    if (j > 0) {
      const double running = std::max(std::abs(sum), std::abs(terms.front()));
      panel_opt.abs_tol = std::max({opt.abs_tol * 1e-3, 1e-3 * opt.rel_tol * running, 1e-300});
    }
    QuadratureResult p;
    try {
      if (j == 0) {
        // Dyadic cuts toward the origin resolve structure much narrower than the first panel.
        std::vector<double> cuts{0.0};
        for (int e = 40; e >= 1; --e) cuts.push_back(std::ldexp(width, -e));
        cuts.push_back(width);
        detail::AdaptiveStats st;
        p.value = detail::adaptive<double>(g, cuts, panel_opt, st);
        p.abs_error_estimate = st.error;
        p.evaluations = st.evaluations;
      } else {
        p = integrate_interval(g, j * width, (j + 1) * width, panel_opt);
      }
    } catch (const NumericalError& e) {
      p = {e.best_estimate, e.error_estimate, 0};
    }
    evals += p.evaluations;
    panel_err += p.abs_error_estimate;
    sum += p.value;
    sums.push_back(sum);
    terms.push_back(p.value);
    if (j + 1 < kMinPanels) continue;

    const double scale = std::abs(terms.front()) + std::abs(sum);
    if (scale <= opt.abs_tol) return {sum, panel_err, evals};

    const SeriesLimit lim = wynn_epsilon(sums);
    const double drift = std::abs(lim.value - prev_estimate);
    prev_estimate = lim.value;
    const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(lim.value));
    const double err = std::max(lim.error, drift) + panel_err;

    // Tail terms must alternate and shrink before the extrapolation is trusted.
    bool alternating = true;
    for (std::size_t i = terms.size() - 4; i + 1 < terms.size(); ++i) {
      if (terms[i] * terms[i + 1] > 0.0 || std::abs(terms[i + 1]) > 1.1 * std::abs(terms[i])) alternating = false;
    }
    const bool negligible_tail = std::abs(terms.back()) <= 1e-3 * tol;
    if ((alternating || negligible_tail) && err <= tol) return {lim.value, err, evals};
  }
  throw NumericalError("integrate_oscillatory: panel series failed to converge", prev_estimate, kInf);
}

QuadratureResult integrate_oscillatory_2d(const std::function<double(double, double)>& F, double a, double b,
                                          const QuadratureOptions& opt) {
  if (!(a > 0.0) || !(b > 0.0)) throw ValidationError("integrate_oscillatory_2d: frequencies must be positive");
  QuadratureOptions inner = opt;
  inner.rel_tol = opt.rel_tol * 1e-2;
  inner.abs_tol = opt.abs_tol * 1e-2;
  double inner_err = 0.0;
  long evals = 0;
  auto outer = [&](double k) {
    const QuadratureResult r = integrate_oscillatory([&](double q) { return F(k, q); }, b, inner);
    inner_err = std::max(inner_err, r.abs_error_estimate);
    evals += r.evaluations;
    return r.value;
  };
  QuadratureResult r = integrate_oscillatory(outer, a, opt);
  // Inner errors propagate with the outer weight |sin| <= 1 over the effective range ~ pi/a per panel.
  r.abs_error_estimate += inner_err * M_PI / a;
  r.evaluations += evals;
  return r;
}

ComplexQuadratureResult integrate_vertical_line(const std::function<std::complex<double>(double)>& g,
                                                double tail_exponent_hint, const QuadratureOptions& opt,
                                                double t_min, double t_scale) {
  if (!(tail_exponent_hint > 1.0)) throw ValidationError("integrate_vertical_line: tail exponent must exceed 1");
  if (!(t_scale > 0.0) || t_min < 0.0) throw ValidationError("integrate_vertical_line: bad range");
  auto sym = [&](double t) { return g(t) + g(-t); };
  long evals = 0;

  double peak = 0.0;
  for (int j = -8; j <= 8; ++j) {
    const double t = t_scale * std::pow(10.0, j);
    if (t <= t_min) continue;
    peak = std::max(peak, std::abs(sym(t)));
    ++evals;
  }
  if (!std::isfinite(peak)) throw NumericalError("integrate_vertical_line: non-finite integrand");

  double T = std::max(t_scale, 2.0 * t_min);
  double gT = std::abs(sym(T));
  while (gT > 1e-12 * peak) {
    const double g2 = std::abs(sym(2.0 * T));
    evals += 1;
    if (T > 1e14 * t_scale || (g2 > gT && T > 1e3 * t_scale))
      throw NumericalError("integrate_vertical_line: integrand does not decay along the line");
    T *= 2.0;
    gT = g2;
  }

  std::vector<double> cuts{t_min};
  const double first = t_min > 0.0 ? t_min : 1e-10 * t_scale;
  if (t_min == 0.0) cuts.push_back(first);
  for (double c = first * 10.0; c < T; c *= 10.0) cuts.push_back(c);
  cuts.push_back(T);

  detail::AdaptiveStats st;
  std::complex<double> v = detail::adaptive<std::complex<double>>(sym, cuts, opt, st);
  evals += st.evaluations;

  const std::complex<double> tail = sym(T) * T / (tail_exponent_hint - 1.0);
  return {v + tail, st.error + std::abs(tail), evals + 1};
}

}  // namespace dispent
