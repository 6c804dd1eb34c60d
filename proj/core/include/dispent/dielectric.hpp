#pragma once

#include <string>
#include <variant>

namespace dispent {

struct Free {};

struct Plasma {
  double omega_p;
};

// chi(i w) = omega_p^2 / (w^2 + gamma w + omega_0^2)
struct Lorentz {
  double omega_p;
  double omega_0;
  double gamma;
};

// eps(i w, k) = eps_0 (1 + f / (A k^2 + gamma w + w^2 + omega_0^2))
struct SpatiallyDispersive {
  double eps_0;
  double f;
  double A;
  double gamma;
  double omega_0;
};

using SusceptibilityModel = std::variant<Free, Plasma, Lorentz, SpatiallyDispersive>;

// Throws ValidationError on negative rates, eps_0 < 1, etc.
void validate(const SusceptibilityModel& model);

std::string describe(const SusceptibilityModel& model);

// chi(i w) = eps(i w, k) - 1; k only matters for the spatially dispersive variant.
double chi_iw(const SusceptibilityModel& model, double omega, double k = 0.0);

struct Permittivity {
  double value;
  bool beyond_validity;  // k > pi / lattice_scale when a lattice scale is configured
};

Permittivity eps_iw_k(const SusceptibilityModel& model, double omega, double k,
                      double lattice_scale = 0.0);

// Every variant at fixed k written as eps(i w) = eps_inf + P / (w^2 + gamma w + Omega^2).
// Free has P = 0; Plasma has gamma = Omega^2 = 0.
struct ResonanceForm {
  double eps_inf;
  double P;
  double gamma;
  double Omega2;
};

ResonanceForm resonance_form(const SusceptibilityModel& model, double k);

}  // namespace dispent
