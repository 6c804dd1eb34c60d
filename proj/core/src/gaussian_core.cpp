#include "dispent/gaussian_core.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Eigenvalues>

#include "dispent/errors.hpp"

namespace dispent {

namespace {

void require_square(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw ValidationError(std::string(what) + ": matrix must be square and non-empty");
}

void require_symmetric(const Eigen::MatrixXd& m, const char* what) {
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw ValidationError(std::string(what) + ": matrix is not symmetric");
}

}  // namespace

Eigen::MatrixXd symplectic_form(int n) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  s.topRightCorner(n, n).setIdentity();
  s.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return s;
}

double clamp_mu(double mu) {
  if (!(mu >= 1.0 - kPureBand))
    throw DomainError("symplectic eigenvalue " + std::to_string(mu) + " violates the uncertainty bound");
  return mu < 1.0 ? 1.0 : mu;
}

SymplecticSpectrum symplectic_spectrum(const CovarianceMatrix& gamma) {
  require_square(gamma, "symplectic_spectrum");
  if (gamma.rows() % 2 != 0) throw ValidationError("symplectic_spectrum: odd dimension");
  require_symmetric(gamma, "symplectic_spectrum");
  const int n = static_cast<int>(gamma.rows() / 2);

  const Eigen::MatrixXcd m = std::complex<double>(0.0, 1.0) * (symplectic_form(n) * gamma);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  if (es.info() != Eigen::Success) throw NumericalError("symplectic_spectrum: eigensolver failed");

  const double norm = gamma.cwiseAbs().maxCoeff();
  SymplecticSpectrum mu;
  mu.reserve(n);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const auto z = es.eigenvalues()[i];
    if (std::abs(z.imag()) > 1e-8 * norm)
      throw NumericalError("symplectic_spectrum: complex residue " + std::to_string(z.imag()));
    if (z.real() > 0.0) mu.push_back(z.real());
  }
  if (static_cast<int>(mu.size()) != n)
    throw NumericalError("symplectic_spectrum: eigenvalues do not pair as +-mu");
  for (double& v : mu) v = clamp_mu(v);
  std::sort(mu.begin(), mu.end());
  return mu;
}

SymplecticSpectrum symplectic_spectrum_block(const Eigen::MatrixXd& G, const Eigen::MatrixXd& H) {
  require_square(G, "symplectic_spectrum_block(G)");
  require_square(H, "symplectic_spectrum_block(H)");
  if (G.rows() != H.rows()) throw ValidationError("symplectic_spectrum_block: size mismatch");
  require_symmetric(G, "symplectic_spectrum_block(G)");
  require_symmetric(H, "symplectic_spectrum_block(H)");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eg(G);
  if (eg.info() != Eigen::Success || eg.eigenvalues().minCoeff() <= 0.0)
    throw ValidationError("symplectic_spectrum_block: G is not positive definite");
  if (Eigen::LLT<Eigen::MatrixXd>(H).info() != Eigen::Success)
    throw ValidationError("symplectic_spectrum_block: H is not positive definite");

  const Eigen::MatrixXd root = eg.operatorSqrt();
  Eigen::MatrixXd s = root * H * root;
  s = 0.5 * (s + s.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);

  SymplecticSpectrum mu(static_cast<std::size_t>(s.rows()));
  for (Eigen::Index i = 0; i < s.rows(); ++i)
    mu[static_cast<std::size_t>(i)] = clamp_mu(2.0 * std::sqrt(std::max(es.eigenvalues()[i], 0.0)));
  std::sort(mu.begin(), mu.end());
  return mu;
}

double binary_entropy_occupation(double n) {
  if (n < 0.0) throw DomainError("negative occupation");
  if (n == 0.0) return 0.0;
  return (n + 1.0) * std::log1p(n) - n * std::log(n);
}

double binary_entropy(double mu) { return binary_entropy_occupation(0.5 * (clamp_mu(mu) - 1.0)); }

double renyi_mode(double mu, double alpha) {
  mu = clamp_mu(mu);
  if (alpha == 2.0) return std::log(mu);
  const double a = 0.5 * (mu + 1.0);
  const double b = 0.5 * (mu - 1.0);
  return (alpha * std::log(a) + std::log1p(-std::pow(b / a, alpha))) / (alpha - 1.0);
}

double vn_entropy(const SymplecticSpectrum& mu) {
  double s = 0.0;
  for (double m : mu) s += binary_entropy(m);
  return s;
}

double renyi_entropy(const SymplecticSpectrum& mu, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("renyi_entropy: alpha must be positive");
  if (alpha == 1.0) throw DomainError("renyi_entropy: alpha = 1 is the von Neumann entropy");
  double s = 0.0;
  for (double m : mu) s += renyi_mode(m, alpha);
  return s;
}

ModeThermo mode_thermo_occupation(double n) {
  if (n < 0.0) throw DomainError("negative occupation");
  if (n == 0.0) return {kInfiniteEnergy, 0.0, 0.0};
  return {std::log1p(1.0 / n), n / (n + 1.0), n};
}

ModeThermo mode_thermo(double mu) { return mode_thermo_occupation(0.5 * (clamp_mu(mu) - 1.0)); }

}  // namespace dispent
