#include "dispent/casimir_ee.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "dispent/errors.hpp"
#include "dispent/parallel.hpp"

namespace dispent {

namespace {
constexpr double kPi = std::numbers::pi;

double bilinear(const BodyPairConfig& c) {
  return c.omega_pA * c.omega_pA * c.omega_pB * c.omega_pB * c.V_A * c.V_B;
}
}  // namespace

void validate(const BodyPairConfig& c) {
  if (!(c.R > 0.0)) throw ValidationError("body pair: R must be positive");
  if (!(c.V_A > 0.0) || !(c.V_B > 0.0)) throw ValidationError("body pair: volumes must be positive");
  if (!(c.omega_0 > 0.0)) throw ValidationError("body pair: omega_0 must be positive");
  if (c.omega_pA < 0.0 || c.omega_pB < 0.0) throw ValidationError("body pair: omega_p must be non-negative");
}

bool asymptotic_regime(const BodyPairConfig& c) { return c.R * c.omega_0 >= 1.0; }

double casimir_F(double k, double q) {
  if (k < 0.0 || q < 0.0) throw DomainError("casimir_F: momenta must be non-negative");
  const double s = k + q;
  // 2kq(k+q) + 2k^2q^2 over (k+q)^2 is 2t + 2t^2 with t = kq/(k+q), finite at the origin.
  const double t = s > 0.0 ? k * q / s : 0.0;
  return (1.0 + 2.0 * t + 2.0 * t * t) / ((1.0 + k) * (1.0 + k) * (1.0 + q) * (1.0 + q));
}

QuadratureResult casimir_J(double X, const QuadratureOptions& opt) {
  if (!(X > 0.0)) throw DomainError("casimir_J: X must be positive");
  return integrate_oscillatory_2d(casimir_F, X, X, opt);
}

double K_of_R(const BodyPairConfig& cfg, const QuadratureOptions& opt) {
  validate(cfg);
  const double J = casimir_J(cfg.R * cfg.omega_0, opt).value;
  return bilinear(cfg) * 4.0 * std::pow(kPi, 4) / (cfg.R * cfg.R) * J;
}

double K_asymptote(const BodyPairConfig& cfg) {
  validate(cfg);
  return 4.0 * std::pow(kPi, 4) * bilinear(cfg) / (cfg.omega_0 * cfg.omega_0 * std::pow(cfg.R, 4));
}

S2RLeading s2R_leading(const BodyPairConfig& cfg, const QuadratureOptions& opt) {
  S2RLeading s;
  s.numeric = -0.5 * K_of_R(cfg, opt);
  s.asymptote = -0.5 * K_asymptote(cfg);
  s.ratio = s.asymptote != 0.0 ? s.numeric / s.asymptote : std::numeric_limits<double>::quiet_NaN();
  return s;
}

std::vector<CasimirRow> casimir_scan(const BodyPairConfig& base, const std::vector<double>& R_values,
                                     const QuadratureOptions& opt) {
  std::vector<CasimirRow> rows(R_values.size());
  parallel_for(R_values.size(), [&](std::size_t i) {
    BodyPairConfig c = base;
    c.R = R_values[i];
    const double K = K_of_R(c, opt);
    const double asym = -0.5 * K_asymptote(c);
    rows[i] = {c.R, K, -0.5 * K, asym, asym != 0.0 ? -0.5 * K / asym : std::numeric_limits<double>::quiet_NaN()};
  });
  return rows;
}

QuadratureResult subleading_r6_coefficient(const QuadratureOptions& opt) {
  QuadratureOptions inner = opt;
  inner.rel_tol = opt.rel_tol * 1e-1;
  double inner_err = 0.0;
  auto outer = [&](double w) {
    if (w == 0.0) return 0.0;
    const QuadratureResult r =
        integrate_oscillatory([](double u) { return u * u / ((u * u + 1.0) * (u * u + 1.0)); }, w, inner);
    inner_err = std::max(inner_err, r.abs_error_estimate * w * w * w * std::exp(-w));
    return w * w * w * std::exp(-w) * r.value;
  };
  // The inner integral is O(w log w) as w -> 0, so [0, w_lo] contributes O(w_lo^5 log w_lo).
  constexpr double w_lo = 1e-3;
  constexpr double w_mid = 20.0;
  QuadratureResult r = integrate_interval(outer, w_lo, w_mid, opt);
  const QuadratureResult tail = integrate_semi_infinite([&](double x) { return outer(w_mid + x); }, opt, 5.0);
  r.value += tail.value;
  r.abs_error_estimate += tail.abs_error_estimate + 10.0 * inner_err + std::pow(w_lo, 5) * std::log(1.0 / w_lo);
  r.evaluations += tail.evaluations;
  return r;
}

QuadratureResult subleading_inner_check(double omega, const QuadratureOptions& opt) {
  if (!(omega > 0.0)) throw DomainError("subleading_inner_check: omega must be positive");
  return integrate_oscillatory([](double u) { return u / ((1.0 + u * u) * (1.0 + u * u)); }, omega, opt);
}

MonteCarloEstimate cube_pair_inverse_sixth(double R, std::uint64_t samples, std::uint64_t seed) {
  if (!(R > 1.0)) throw DomainError("cube_pair_inverse_sixth: cubes overlap for R <= 1");
  if (samples < 2) throw ValidationError("cube_pair_inverse_sixth: need at least two samples");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  double mean = 0.0;
  double m2 = 0.0;
  for (std::uint64_t n = 1; n <= samples; ++n) {
    const double dx = R + u(rng) - u(rng);
    const double dy = u(rng) - u(rng);
    const double dz = u(rng) - u(rng);
    const double r2 = dx * dx + dy * dy + dz * dz;
    const double v = 1.0 / (r2 * r2 * r2);
    const double delta = v - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (v - mean);
  }
  const double var = m2 / static_cast<double>(samples - 1);
  return {mean, std::sqrt(var / static_cast<double>(samples)), samples};
}

PlateSum plate_pair_sum(double R) {
  if (!(R > 0.0)) throw DomainError("plate_pair_sum: R must be positive");
  const QuadratureOptions opt{1e-13, 0.0, 5000};
  double inner_err = 0.0;
  auto outer = [&](double x) {
    const double a2 = R * R + x * x;
    const QuadratureResult r = integrate_semi_infinite(
        [a2](double y) {
          const double d = a2 + y * y;
          return 1.0 / (d * d);
        },
        std::vector<double>{std::sqrt(a2)}, opt);
    inner_err = std::max(inner_err, r.abs_error_estimate);
    return r.value;
  };
  const QuadratureResult r = integrate_semi_infinite(outer, std::vector<double>{R}, opt);
  return {4.0 * r.value, kPi / (R * R), 4.0 * r.abs_error_estimate};
}

PowerLawFit power_law_fit(const std::vector<double>& R, const std::vector<double>& values) {
  if (R.size() != values.size()) throw ValidationError("power_law_fit: length mismatch");
  if (R.size() < 5) throw ValidationError("power_law_fit: need at least five points");
  const double sign = values.front() > 0.0 ? 1.0 : -1.0;
  const std::size_t n = R.size();
  Eigen::MatrixXd A(static_cast<Eigen::Index>(n), 2);
  Eigen::VectorXd y(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!(R[i] > 0.0)) throw DomainError("power_law_fit: R must be positive");
    if (!(values[i] * sign > 0.0)) throw DomainError("power_law_fit: values change sign or vanish");
    const auto ii = static_cast<Eigen::Index>(i);
    A(ii, 0) = 1.0;
    A(ii, 1) = std::log(R[i]);
    y[ii] = std::log(std::abs(values[i]));
  }
  const Eigen::Vector2d c = A.colPivHouseholderQr().solve(y);
  const double ss_res = (A * c - y).squaredNorm();
  const double ss_tot = (y.array() - y.mean()).square().sum();
  return {c[1], sign * std::exp(c[0]), ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0};
}

}  // namespace dispent
