#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dispent/dielectric.hpp"
#include "dispent/quadrature.hpp"

namespace dispent {

// Per-momentum data of the homogeneous medium. g and h are pi times the
// equal-time correlators <phi phi>_k and <pi pi>_k, so mu = (2/pi) sqrt(g h).
struct ModeRecord {
  double k = 0.0;
  double g = 0.0;
  double h = 0.0;
  double mu = 1.0;
  double E = 0.0;           // 2 Lambda_k; infinite for a pure mode
  double beta_omega = 0.0;  // same as E
  double n = 0.0;           // occupation (mu - 1)/2, carried at full relative precision
  double s_vn = 0.0;
  double s_2 = 0.0;
};

// g h - pi^2/4 split into pieces that vanish identically for the free and
// plasma media. a = int B/(D D0), c = int B/D with
// B = (gamma w + Omega^2)/(w^2 + gamma w + Omega^2), D = w^2 eps + k^2,
// D0 = eps_inf w^2 + k^2 + P.
struct ModeDecomposition {
  double g0 = 0.0;
  double a = 0.0;
  double c = 0.0;
  double g = 0.0;
  double h = 0.0;
  double excess = 0.0;  // g h - pi^2/4
  double n = 0.0;
};

QuadratureOptions mode_quadrature();

double g_k(const SusceptibilityModel& model, double k, const QuadratureOptions& opt = mode_quadrature());
double h_k(const SusceptibilityModel& model, double k, const QuadratureOptions& opt = mode_quadrature());

// Frequency scales of the integrands at momentum k, used as quadrature breakpoints.
std::vector<double> frequency_breakpoints(const SusceptibilityModel& model, double k);

ModeDecomposition mode_decomposition(const SusceptibilityModel& model, double k,
                                     const QuadratureOptions& opt = mode_quadrature());

ModeRecord mode_record(const SusceptibilityModel& model, double k);

std::vector<ModeRecord> dispersion_curve(const SusceptibilityModel& model, const std::vector<double>& k_grid);

struct SoftModeAggregates {
  double N = 0.0;
  double E_total = 0.0;
  double delta_N2 = 0.0;
};

// Radial integrals of n k^{d-1}, n k^d and n(1+n) k^{d-1} over (eps_ir, k_min).
// eps_ir is required for d = 1.
SoftModeAggregates soft_mode_aggregates(const SusceptibilityModel& model, double k_min, int d,
                                        std::optional<double> eps_ir = std::nullopt);

struct EntropyDensityResult {
  double cutoff = 0.0;
  int d = 3;
  double value = 0.0;
  double abs_error = 0.0;
  std::vector<std::pair<double, double>> integrand_samples;  // (k, h(mu_k))
};

// (2 pi)^-d int_{|k| < cutoff} d^d k h(mu_k)
EntropyDensityResult entropy_density(const SusceptibilityModel& model, double cutoff, int d,
                                     int samples = 25);

// Entropy densities at ascending cutoffs, accumulated interval by interval.
std::vector<double> entropy_density_scan(const SusceptibilityModel& model, const std::vector<double>& cutoffs, int d);

// Surface area of the unit sphere in d dimensions (2, 2 pi, 4 pi).
double unit_sphere_area(int d);

}  // namespace dispent
