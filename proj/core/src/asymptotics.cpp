#include "dispent/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "dispent/errors.hpp"
#include "dispent/mode_spectrum.hpp"

namespace dispent {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

void require_params(const LorentzParams& p) {
  if (p.omega_p < 0.0 || p.omega_0 < 0.0 || p.gamma < 0.0)
    throw DomainError("Lorentz parameters must be non-negative");
}

void require_k(double k) {
  if (!(k > 0.0)) throw DomainError("momentum must be positive");
}

double discriminant(const LorentzParams& p) { return p.gamma * p.gamma - 4.0 * p.omega_0 * p.omega_0; }

bool degenerate(const LorentzParams& p) {
  const double scale = std::max(p.gamma * p.gamma, 4.0 * p.omega_0 * p.omega_0);
  return std::abs(discriminant(p)) < 1e-8 * scale;
}

struct Pole {
  cd p;
  int m;
};

// int_0^inf N(w) / prod (w - p_j)^{m_j} dw for m_j <= 2, N linear, all poles off [0, inf)
// and total degree deficit >= 2.
double partial_fraction_integral(cd n1, cd n0, const std::vector<Pole>& poles) {
  cd total = 0.0;
  for (std::size_t j = 0; j < poles.size(); ++j) {
    const cd pj = poles[j].p;
    cd denom = 1.0;
    cd dlog = 0.0;
    for (std::size_t i = 0; i < poles.size(); ++i) {
      if (i == j) continue;
      denom *= std::pow(pj - poles[i].p, poles[i].m);
      dlog += static_cast<double>(poles[i].m) / (pj - poles[i].p);
    }
    const cd N = n1 * pj + n0;
    const cd phi = N / denom;
    if (poles[j].m == 1) {
      total -= phi * std::log(-pj);
    } else {
      const cd dphi = (n1 - N * dlog) / denom;
      total += -dphi * std::log(-pj) + phi / (-pj);
    }
  }
  return total.real();
}

double resonance_integral(const LorentzParams& p, double k, int power) {
  require_params(p);
  require_k(k);
  const double K = std::sqrt(k * k + p.omega_p * p.omega_p);
  std::vector<Pole> poles{{cd(0.0, K), power}, {cd(0.0, -K), power}};
  cd n1 = p.gamma;
  cd n0 = p.omega_0 * p.omega_0;
  if (p.omega_0 == 0.0) {
    if (p.gamma == 0.0) return 0.0;
    // B = gamma / (w + gamma)
    n1 = 0.0;
    n0 = p.gamma;
    poles.push_back({cd(-p.gamma, 0.0), 1});
  } else if (degenerate(p)) {
    poles.push_back({cd(-0.5 * p.gamma, 0.0), 2});
  } else {
    const auto [ap, am] = lorentz_roots(p);
    poles.push_back({ap, 1});
    poles.push_back({am, 1});
  }
  return partial_fraction_integral(n1, n0, poles);
}

// (gamma^2 - 2 w0^2) arg(gamma - i s) / s with its s -> 0 limit.
double arg_term(const LorentzParams& p, double s) {
  const double c = p.gamma * p.gamma - 2.0 * p.omega_0 * p.omega_0;
  if (s < 1e-6 * std::max(p.gamma, p.omega_0)) return -c / p.gamma;
  return c * std::atan2(-s, p.gamma) / s;
}

// k^2 III in the leading large-k approximation.
double k2_III_leading(const LorentzParams& p, double k) {
  const double lk = std::log(k);
  if (p.gamma == 0.0) return 0.5 * kPi * p.omega_0;
  if (p.omega_0 == 0.0) return p.gamma * lk - p.gamma * std::log(p.gamma);
  switch (damping_regime(p)) {
    case DampingRegime::Overdamped: {
      const double sd = std::sqrt(discriminant(p));
      const double ap = 0.5 * (-p.gamma + sd);
      const double am = 0.5 * (-p.gamma - sd);
      return p.gamma * lk + (ap * ap * std::log(-ap) - am * am * std::log(-am)) / sd;
    }
    default: {
      const double s = std::sqrt(std::max(-discriminant(p), 0.0));
      return p.gamma * lk - p.gamma * std::log(p.omega_0) + arg_term(p, s);
    }
  }
}

}  // namespace

DampingRegime damping_regime(const LorentzParams& p) {
  require_params(p);
  if (p.gamma == 0.0) return DampingRegime::Undamped;
  if (degenerate(p)) return DampingRegime::Critical;
  return discriminant(p) > 0.0 ? DampingRegime::Overdamped : DampingRegime::Underdamped;
}

std::pair<cd, cd> lorentz_roots(const LorentzParams& p) {
  const cd sd = std::sqrt(cd(discriminant(p), 0.0));
  return {0.5 * (-p.gamma + sd), 0.5 * (-p.gamma - sd)};
}

double II_closed_form(const LorentzParams& p, double k) { return resonance_integral(p, k, 2); }
double III_closed_form(const LorentzParams& p, double k) { return resonance_integral(p, k, 1); }

double III_leading(const LorentzParams& p, double k) {
  require_params(p);
  require_k(k);
  if (p.gamma == 0.0 && p.omega_0 == 0.0) return 0.0;
  return k2_III_leading(p, k) / (k * k);
}

double II_leading(const LorentzParams& p, double k) {
  require_params(p);
  require_k(k);
  if (p.gamma == 0.0 && p.omega_0 == 0.0) return 0.0;
  return (k2_III_leading(p, k) - 0.5 * p.gamma) / std::pow(k, 4);
}

namespace {
double resonance_quadrature(const LorentzParams& p, double k, int power, const QuadratureOptions& opt) {
  require_params(p);
  require_k(k);
  const double K2 = k * k + p.omega_p * p.omega_p;
  auto f = [&](double w) {
    const double w2 = w * w;
    const double B = (p.gamma * w + p.omega_0 * p.omega_0) / (w2 + p.gamma * w + p.omega_0 * p.omega_0);
    return B / std::pow(w2 + K2, power);
  };
  std::vector<double> bp{std::sqrt(K2)};
  if (p.omega_0 > 0.0) bp.push_back(p.omega_0);
  if (p.gamma > 0.0) bp.push_back(p.gamma);
  return integrate_semi_infinite(f, bp, opt).value;
}
}  // namespace

double II_integral(const LorentzParams& p, double k, const QuadratureOptions& opt) {
  return resonance_quadrature(p, k, 2, opt);
}
double III_integral(const LorentzParams& p, double k, const QuadratureOptions& opt) {
  return resonance_quadrature(p, k, 1, opt);
}

double gh_large_k(const LorentzParams& p, double k) {
  require_params(p);
  require_k(k);
  const double P = p.omega_p * p.omega_p;
  if (p.gamma > 0.0) return kPi * kPi / 4.0 + P * p.gamma * kPi * std::log(k) / (2.0 * k * k * k);
  return kPi * kPi / 4.0 + P * kPi * kPi * p.omega_0 / (4.0 * k * k * k);
}

double gh_large_k_complete(const LorentzParams& p, double k) {
  require_params(p);
  require_k(k);
  const double P = p.omega_p * p.omega_p;
  const double K = std::sqrt(k * k + P);
  return kPi * kPi / 4.0 + P * kPi * (K * II_closed_form(p, k) - III_closed_form(p, k) / (2.0 * K));
}

double mu_large_k(const LorentzParams& p, double k) {
  require_params(p);
  require_k(k);
  return 1.0 + p.omega_p * p.omega_p * p.gamma * std::log(k) / (kPi * k * k * k);
}

double entropy_integrand_large_k(const LorentzParams& p, double k) {
  require_params(p);
  require_k(k);
  const double P = p.omega_p * p.omega_p;
  if (P == 0.0) return 0.0;
  const double lk = std::log(k);
  if (p.gamma > 0.0) {
    const double q = P * p.gamma * lk;
    return q * (1.0 + 3.0 * lk - std::log(q / (2.0 * kPi))) / (2.0 * kPi * k * k * k);
  }
  const double q = P * p.omega_0;
  return q * (1.0 + 3.0 * lk - std::log(q / 4.0)) / (4.0 * k * k * k);
}

SmallKLimits small_k_limits(const LorentzParams& p) {
  require_params(p);
  const double P = p.omega_p * p.omega_p;
  const double w02 = p.omega_0 * p.omega_0;
  const double radicand = 4.0 * P - p.gamma * p.gamma + 4.0 * w02;
  if (!(radicand > 0.0)) throw DomainError("small_k_limits: 4 w_p^2 - gamma^2 + 4 w_0^2 must be positive");
  if (!(w02 > 0.0)) throw DomainError("small_k_limits: omega_0 must be positive");
  SmallKLimits s;
  const double root = std::sqrt(radicand);
  s.g_coeff = kPi / (2.0 * std::sqrt(1.0 + P / w02));
  s.h_limit = kPi * P / root;
  const double C = w02 * P * P / ((w02 + P) * radicand);
  s.sqrt_gh_coeff = kPi / std::sqrt(2.0) * std::pow(C, 0.25);
  s.nu = P > 0.0 ? std::sqrt(2.0) * std::pow(C, -0.25) : std::numeric_limits<double>::infinity();
  s.h_limit_exact = (2.0 * P / root) * (0.5 * kPi - std::atan(p.gamma / root));
  s.nu_exact = P > 0.0 ? kPi / std::sqrt(s.g_coeff * s.h_limit_exact) : std::numeric_limits<double>::infinity();
  return s;
}

CutoffFit fit_log_power(const std::vector<double>& cutoffs, const std::vector<double>& values) {
  if (cutoffs.size() != values.size() || cutoffs.size() < 3)
    throw ValidationError("fit_log_power: need at least three (cutoff, value) pairs");
  CutoffFit fit;
  fit.cutoffs = cutoffs;
  fit.values = values;
  double vmax = 0.0;
  for (double v : values) vmax = std::max(vmax, std::abs(v));
  if (vmax < 1e-12) {
    fit.skipped = true;
    return fit;
  }
  const Eigen::Index n = static_cast<Eigen::Index>(values.size());
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y[i] = values[static_cast<std::size_t>(i)];
  auto solve = [&](int m, double& c0, double& c1) {
    Eigen::MatrixXd A(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
      A(i, 0) = 1.0;
      A(i, 1) = std::pow(std::log(cutoffs[static_cast<std::size_t>(i)]), m);
    }
    const Eigen::VectorXd x = A.colPivHouseholderQr().solve(y);
    if (!x.allFinite()) throw NumericalError("fit_log_power: degenerate fit");
    c0 = x[0];
    c1 = x[1];
    return std::sqrt((A * x - y).squaredNorm() / static_cast<double>(n));
  };
  double c0_2, c1_2, c0_3, c1_3;
  fit.residual_m2 = solve(2, c0_2, c1_2);
  fit.residual_m3 = solve(3, c0_3, c1_3);
  const bool cubic = fit.residual_m3 < fit.residual_m2;
  fit.exponent_of_log = cubic ? 3 : 2;
  fit.offset = cubic ? c0_3 : c0_2;
  fit.prefactor = cubic ? c1_3 : c1_2;
  const double lo = std::min(fit.residual_m2, fit.residual_m3);
  const double hi = std::max(fit.residual_m2, fit.residual_m3);
  fit.residual_ratio = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  return fit;
}

CutoffFit cutoff_scaling_fit(const SusceptibilityModel& model, const std::vector<double>& cutoffs, int d) {
  if (cutoffs.size() < 3) throw ValidationError("cutoff_scaling_fit: need at least three cutoffs");
  if (cutoffs.back() / cutoffs.front() < 100.0) throw ValidationError("cutoff_scaling_fit: grid must span two decades");
  return fit_log_power(cutoffs, entropy_density_scan(model, cutoffs, d));
}

}  // namespace dispent
