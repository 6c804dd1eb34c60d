#pragma once

#include <complex>

#include <Eigen/Dense>

#include "dispent/quadrature.hpp"

namespace dispent {

// Field correlations G = <phi phi>, H = <pi pi> (symmetric positive definite); Gamma = G H.
struct GammaFactors {
  Eigen::MatrixXd G;
  Eigen::MatrixXd H;
};

struct GammaTriple {
  GammaFactors A;
  GammaFactors B;
  GammaFactors AUB;
  GammaFactors ref;  // Gamma_0, no bodies
  // False when symmetrized <phi pi> correlations exceed the tolerance of the producer.
  bool gh_eligible = true;
  double max_cross_correlation = 0.0;
};

Eigen::MatrixXd gamma_product(const GammaFactors& f);

// Eigenvalues of G^{1/2} H G^{1/2}, ascending.
Eigen::VectorXd gamma_spectrum(const GammaFactors& f);

// Throws ValidationError on shape or symmetry problems and DomainError when a Gamma
// eigenvalue lies below 1/4 - 1e-9 (uncertainty bound).
void validate(const GammaTriple& t);

// (x - Gamma_0)^-1 (Gamma - Gamma_0)
Eigen::MatrixXcd build_K(const Eigen::MatrixXd& Gamma, const Eigen::MatrixXd& Gamma0, std::complex<double> x);

// Tr Log(1 - (1-K_A)^-1 (K_A K_B + K_AUB - K_A - K_B) (1-K_B)^-1): sum of principal
// logarithms of the eigenvalues.
std::complex<double> relative_logdet(const GammaTriple& t, std::complex<double> x);

// Entropy weight f_alpha(x) with f(Gamma eigenvalue) the mode entropy, and its derivative.
std::complex<double> contour_antiderivative(std::complex<double> x, double alpha);
std::complex<double> contour_weight(std::complex<double> x, double alpha);

struct ContourOptions {
  // Re x of the integration line; 1/4 is valid for every admissible spectrum.
  double abscissa = 0.25;
  // The segment |Im x| < t_lo is integrated analytically with L frozen at its endpoint value.
  double t_lo = 1e-5;
  QuadratureOptions quad{1e-10, 1e-13, 4000};
};

struct ContourResult {
  double value;
  double imag_residual;  // imaginary part of the full-line integral (zero by conjugate symmetry)
  double abs_error_estimate;
};

// S_R = (1/2 pi i) int f'(x) L(x) dx along Re x = abscissa; alpha = 1 is von Neumann, alpha > 1 Renyi.
ContourResult sR_contour(const GammaTriple& t, double alpha, const ContourOptions& opt = {});

// Sum of f_alpha over Gamma eigenvalues, combined as AUB - A - B + 0.
double sR_spectral(const GammaTriple& t, double alpha);

// 1/2 [logdet(4 Gamma_AUB) - logdet(4 Gamma_A) - logdet(4 Gamma_B) + logdet(4 Gamma_0)].
double s2_relative_direct(const GammaTriple& t);

// 1/2 Tr(dG_AUB - dG_A - dG_B - dG_A dG_B), dG = 4 Gamma - 1 (pure reference state).
double s2_second_order(const GammaTriple& t);

}  // namespace dispent
