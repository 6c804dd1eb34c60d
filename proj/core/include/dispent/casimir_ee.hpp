#pragma once

#include <cstdint>
#include <vector>

#include "dispent/quadrature.hpp"

namespace dispent {

// Two dilute bodies with eps(i w) = 1 + omega_p^2/(w^2 + omega_0^2), shared omega_0.
struct BodyPairConfig {
  double omega_pA = 1.0;
  double omega_pB = 1.0;
  double V_A = 1.0;
  double V_B = 1.0;
  double R = 10.0;
  double omega_0 = 1.0;
};

void validate(const BodyPairConfig& cfg);

// True when R omega_0 >= 1, where the R^-4 asymptote is meaningful.
bool asymptotic_regime(const BodyPairConfig& cfg);

// (2k^2q^2 + 2kq(k+q) + (k+q)^2) / ((k+q)^2 (k+1)^2 (q+1)^2), with F(0,0) = 1.
double casimir_F(double k, double q);

// int_0^inf int_0^inf F(k, q) sin(kX) sin(qX) dk dq.
QuadratureResult casimir_J(double X, const QuadratureOptions& opt = {1e-7, 1e-14, 5000});

double K_of_R(const BodyPairConfig& cfg, const QuadratureOptions& opt = {1e-7, 1e-14, 5000});

// 4 pi^4 omega_pA^2 omega_pB^2 V_A V_B / (omega_0^2 R^4)
double K_asymptote(const BodyPairConfig& cfg);

struct S2RLeading {
  double numeric;    // -K / 2
  double asymptote;  // -2 pi^4 omega_pA^2 omega_pB^2 V_A V_B / (omega_0^2 R^4)
  double ratio;      // numeric / asymptote
};

S2RLeading s2R_leading(const BodyPairConfig& cfg, const QuadratureOptions& opt = {1e-7, 1e-14, 5000});

struct CasimirRow {
  double R;
  double K;
  double S2R_numeric;
  double S2R_asymptote;
  double ratio;
};

// Independent R values evaluated in parallel, rows in input order.
std::vector<CasimirRow> casimir_scan(const BodyPairConfig& base, const std::vector<double>& R_values,
                                     const QuadratureOptions& opt = {1e-7, 1e-14, 5000});

// int_0^inf dw w^3 e^{-w} int_0^inf du u^2 sin(w u) / (u^2 + 1)^2
QuadratureResult subleading_r6_coefficient(const QuadratureOptions& opt = {1e-10, 1e-14, 5000});

// int_0^inf u sin(w u) / (1 + u^2)^2 du; pi w e^{-w} / 4 in closed form.
QuadratureResult subleading_inner_check(double omega, const QuadratureOptions& opt = {1e-10, 1e-14, 5000});

struct MonteCarloEstimate {
  double mean;
  double std_error;
  std::uint64_t samples;
};

// int_A int_B |x - y|^-6 for two unit cubes whose centers are R apart along x (R > 1).
MonteCarloEstimate cube_pair_inverse_sixth(double R, std::uint64_t samples, std::uint64_t seed = 12345);

struct PlateSum {
  double numeric;
  double analytic;  // pi / R^2
  double abs_error_estimate;
};

// 4 int_0^inf int_0^inf (R^2 + x^2 + y^2)^-2 dx dy.
PlateSum plate_pair_sum(double R);

struct PowerLawFit {
  double exponent;
  double prefactor;
  double r_squared;
};

// Least squares of log|v| against log R. Needs >= 5 points of one sign.
PowerLawFit power_law_fit(const std::vector<double>& R, const std::vector<double>& values);

}  // namespace dispent
