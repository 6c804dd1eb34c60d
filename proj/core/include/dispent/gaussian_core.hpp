#pragma once

#include <Eigen/Dense>
#include <limits>
#include <vector>

namespace dispent {

// Covariance matrix gamma = 2 Re <O O^T> of a Gaussian state, O = (phi_1..phi_n, pi_1..pi_n).
// Normalised so that the vacuum of a unit-frequency oscillator is the identity.
using CovarianceMatrix = Eigen::MatrixXd;

// Symplectic eigenvalues, ascending, each >= 1.
using SymplecticSpectrum = std::vector<double>;

inline constexpr double kPureBand = 1e-9;

// sigma = [[0, I], [-I, 0]] for n modes.
Eigen::MatrixXd symplectic_form(int n);

SymplecticSpectrum symplectic_spectrum(const CovarianceMatrix& gamma);

// mu_i = 2 sqrt(eig(G H)) for a state without phi-pi correlations,
// G = <phi phi>, H = <pi pi>.
SymplecticSpectrum symplectic_spectrum_block(const Eigen::MatrixXd& G, const Eigen::MatrixXd& H);

// Single-mode entropy functions. binary_entropy_occupation takes n = (mu - 1)/2
// directly, which keeps precision when mu - 1 is below double resolution.
double binary_entropy(double mu);
double binary_entropy_occupation(double n);
double renyi_mode(double mu, double alpha);

double vn_entropy(const SymplecticSpectrum& mu);
double renyi_entropy(const SymplecticSpectrum& mu, double alpha);

struct ModeThermo {
  double E;   // 2 Lambda = log((mu+1)/(mu-1))
  double xi;  // e^{-E}
  double n;   // occupation (mu-1)/2
};

// E for a pure mode (mu == 1) is reported as this sentinel.
inline constexpr double kInfiniteEnergy = std::numeric_limits<double>::infinity();

ModeThermo mode_thermo(double mu);
ModeThermo mode_thermo_occupation(double n);

// Clamp into [1, inf) when inside the tolerance band, otherwise throw DomainError.
double clamp_mu(double mu);

}  // namespace dispent
