#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "dispent/dielectric.hpp"
#include "dispent/quadrature.hpp"

namespace dispent {

struct LorentzParams {
  double omega_p;
  double omega_0;
  double gamma;
};

enum class DampingRegime { Overdamped, Underdamped, Critical, Undamped };

DampingRegime damping_regime(const LorentzParams& p);

// Roots a_+- of w^2 + gamma w + omega_0^2.
std::pair<std::complex<double>, std::complex<double>> lorentz_roots(const LorentzParams& p);

// II(k) = int_0^inf B(w) / (w^2 + K^2)^2 dw and III(k) = int_0^inf B(w) / (w^2 + K^2) dw,
// B = (gamma w + omega_0^2)/(w^2 + gamma w + omega_0^2), K^2 = k^2 + omega_p^2.
// Evaluated exactly by partial fractions.
double II_closed_form(const LorentzParams& p, double k);
double III_closed_form(const LorentzParams& p, double k);

// Leading large-k forms, one per damping regime (Critical uses the underdamped limit).
double II_leading(const LorentzParams& p, double k);
double III_leading(const LorentzParams& p, double k);

// The defining integrals by adaptive quadrature.
double II_integral(const LorentzParams& p, double k, const QuadratureOptions& opt = {});
double III_integral(const LorentzParams& p, double k, const QuadratureOptions& opt = {});

// pi^2/4 + w_p^2 gamma pi log k / (2 k^3) for gamma > 0 and
// pi^2/4 + w_p^2 pi^2 w_0 / (4 k^3) for gamma = 0.
double gh_large_k(const LorentzParams& p, double k);

// First order in w_p^2 with the exact II, III: pi^2/4 + w_p^2 pi (K II - III/(2K)).
double gh_large_k_complete(const LorentzParams& p, double k);

// 1 + w_p^2 gamma log k / (pi k^3)
double mu_large_k(const LorentzParams& p, double k);

// Asymptotic h(mu_k) for large k; the gamma = 0 form is used when gamma == 0.
double entropy_integrand_large_k(const LorentzParams& p, double k);

struct SmallKLimits {
  double g_coeff;        // g_k ~ g_coeff / k
  double h_limit;        // h_k -> h_limit
  double sqrt_gh_coeff;  // sqrt(g_k h_k) ~ sqrt_gh_coeff / sqrt(k)
  double nu;             // E_k ~ nu sqrt(k)
  double h_limit_exact;  // int_0^inf chi/(1+chi) dw
  double nu_exact;       // pi / sqrt(g_coeff h_limit_exact)
};

SmallKLimits small_k_limits(const LorentzParams& p);

struct CutoffFit {
  int exponent_of_log = 0;  // m in S ~ c0 + c (log Lambda)^m
  double prefactor = 0.0;
  double offset = 0.0;
  double residual_m2 = 0.0;
  double residual_m3 = 0.0;
  double residual_ratio = 0.0;  // worse / better
  bool skipped = false;         // identically zero entropy
  std::vector<double> cutoffs;
  std::vector<double> values;
};

CutoffFit cutoff_scaling_fit(const SusceptibilityModel& model, const std::vector<double>& cutoffs, int d = 3);

// Same fit on precomputed entropy values.
CutoffFit fit_log_power(const std::vector<double>& cutoffs, const std::vector<double>& values);

}  // namespace dispent
