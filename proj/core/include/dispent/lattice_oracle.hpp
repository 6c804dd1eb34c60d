#pragma once

#include <vector>

#include <Eigen/Dense>

#include "dispent/gaussian_core.hpp"
#include "dispent/spectral_contour.hpp"

namespace dispent {

// Periodic chain of N field sites with unit spacing. Every site carries a matter
// oscillator psi_j of frequency omega_0; it couples to the field only on body sites.
//   H = 1/2 sum_j [(P_phi_j - omega_p psi_j 1_body(j))^2 + (phi_{j+1} - phi_j)^2 + m^2 phi_j^2
//                  + P_psi_j^2 + omega_0^2 psi_j^2]
// The field mass m keeps the uniform field mode gapped.
struct ChainSpec {
  int N = 16;
  std::vector<int> body_sites_A;
  std::vector<int> body_sites_B;
  double omega_0 = 1.0;
  double omega_p = 1.0;
  double field_mass = 0.5;
};

void validate(const ChainSpec& spec);

// Sorted union of both bodies.
std::vector<int> body_sites(const ChainSpec& spec);

// Quadratic form M with H = x^T M x / 2 over x = (phi_1..N, psi_1..N, P_phi_1..N, P_psi_1..N).
// Throws DomainError if M is not positive definite.
Eigen::MatrixXd build_hamiltonian(const ChainSpec& spec);

// Ground-state covariance gamma = 2 Re <x x^T> of the full chain (4N x 4N).
CovarianceMatrix ground_state_covariance(const ChainSpec& spec);

enum class FieldMomentum {
  Velocity,   // pi = dphi/dt = P_phi - omega_p psi on body sites
  Canonical,  // pi = P_phi
};

// Gaussian marginal of the field, ordered (phi_1..N, pi_1..N).
CovarianceMatrix reduce_to_field(const CovarianceMatrix& full, const ChainSpec& spec,
                                 FieldMomentum momentum = FieldMomentum::Velocity);

// G = <phi phi>, H = <pi pi> from a field covariance; cross_correlation receives max |sym <phi pi>|.
GammaFactors field_factors(const CovarianceMatrix& field, double* cross_correlation = nullptr);

inline constexpr double kCrossCorrelationTolerance = 1e-10;

// Field factors for the chain with A, with B, with both and with neither body.
GammaTriple gamma_triple_from_chain(const ChainSpec& spec);

struct WitnessMode {
  double k;
  double mu;
  double E;
  double omega_free;
  double ratio;  // E / omega_free
};

struct NonThermalityWitness {
  std::vector<WitnessMode> modes;
  double spread;  // max ratio / min ratio - 1
};

// Homogeneous chain (every site a body site): per Fourier mode effective energy of the
// reduced field state against the free dispersion sqrt(m^2 + 4 sin^2(k/2)).
NonThermalityWitness nonthermality_witness(int N, double omega_p, double omega_0, double field_mass);

}  // namespace dispent
