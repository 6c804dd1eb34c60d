#include "dispent/lattice_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "dispent/errors.hpp"

namespace dispent {

namespace {

Eigen::MatrixXd spd_power(const Eigen::MatrixXd& m, double p) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) throw NumericalError("lattice: eigensolver failed");
  return es.eigenvectors() * es.eigenvalues().array().pow(p).matrix().asDiagonal() * es.eigenvectors().transpose();
}

ChainSpec with_bodies(const ChainSpec& s, std::vector<int> a, std::vector<int> b) {
  ChainSpec c = s;
  c.body_sites_A = std::move(a);
  c.body_sites_B = std::move(b);
  return c;
}

}  // namespace

void validate(const ChainSpec& spec) {
  if (spec.N < 2) throw ValidationError("chain: N must be at least 2");
  if (!(spec.omega_0 > 0.0)) throw ValidationError("chain: omega_0 must be positive");
  if (spec.omega_p < 0.0) throw ValidationError("chain: omega_p must be non-negative");
  if (!(spec.field_mass > 0.0)) throw ValidationError("chain: field_mass must be positive");
  std::set<int> seen;
  for (const auto* sites : {&spec.body_sites_A, &spec.body_sites_B}) {
    std::set<int> local;
    for (int j : *sites) {
      if (j < 0 || j >= spec.N) throw ValidationError("chain: body site out of range");
      if (!local.insert(j).second) throw ValidationError("chain: repeated body site");
    }
    for (int j : local)
      if (!seen.insert(j).second) throw ValidationError("chain: body site sets must be disjoint");
  }
}

std::vector<int> body_sites(const ChainSpec& spec) {
  std::vector<int> all = spec.body_sites_A;
  all.insert(all.end(), spec.body_sites_B.begin(), spec.body_sites_B.end());
  std::sort(all.begin(), all.end());
  return all;
}

Eigen::MatrixXd build_hamiltonian(const ChainSpec& spec) {
  validate(spec);
  const int N = spec.N;
  const int n = 2 * N;
  const double m2 = spec.field_mass * spec.field_mass;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int j = 0; j < N; ++j) {
    const int nb = (j + 1) % N;
    M(j, j) += 2.0 + m2;
    M(j, nb) -= 1.0;
    M(nb, j) -= 1.0;
    M(N + j, N + j) += spec.omega_0 * spec.omega_0;
    M(n + j, n + j) += 1.0;
    M(n + N + j, n + N + j) += 1.0;
  }
  for (int j : body_sites(spec)) {
    M(N + j, N + j) += spec.omega_p * spec.omega_p;
    M(n + j, N + j) -= spec.omega_p;
    M(N + j, n + j) -= spec.omega_p;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) throw DomainError("chain Hamiltonian is not positive definite");
  return M;
}

CovarianceMatrix ground_state_covariance(const ChainSpec& spec) {
  const Eigen::MatrixXd M = build_hamiltonian(spec);
  const int n = static_cast<int>(M.rows()) / 2;
  const Eigen::MatrixXd sigma = symplectic_form(n);
  const Eigen::MatrixXd Mh = spd_power(M, 0.5);
  const Eigen::MatrixXd Mih = spd_power(M, -0.5);
  Eigen::MatrixXd X = Mh * sigma.transpose() * M * sigma * Mh;
  X = 0.5 * (X + X.transpose()).eval();
  Eigen::MatrixXd g = Mih * spd_power(X, 0.5) * Mih;
  return 0.5 * (g + g.transpose());
}

CovarianceMatrix reduce_to_field(const CovarianceMatrix& full, const ChainSpec& spec, FieldMomentum momentum) {
  validate(spec);
  const int N = spec.N;
  const int n = 2 * N;
  if (full.rows() != 2 * n || full.cols() != 2 * n) throw ValidationError("reduce_to_field: covariance shape");
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, 2 * n);
  for (int j = 0; j < N; ++j) {
    L(j, j) = 1.0;
    L(N + j, n + j) = 1.0;
  }
  if (momentum == FieldMomentum::Velocity)
    for (int j : body_sites(spec)) L(N + j, N + j) = -spec.omega_p;
  Eigen::MatrixXd r = L * full * L.transpose();
  return 0.5 * (r + r.transpose());
}

GammaFactors field_factors(const CovarianceMatrix& field, double* cross_correlation) {
  const Eigen::Index N = field.rows() / 2;
  if (field.rows() != 2 * N || field.cols() != 2 * N) throw ValidationError("field_factors: covariance shape");
  if (cross_correlation) *cross_correlation = 0.5 * field.topRightCorner(N, N).cwiseAbs().maxCoeff();
  return {0.5 * field.topLeftCorner(N, N), 0.5 * field.bottomRightCorner(N, N)};
}

GammaTriple gamma_triple_from_chain(const ChainSpec& spec) {
  validate(spec);
  GammaTriple t;
  double cross[4];
  const ChainSpec variants[4] = {with_bodies(spec, spec.body_sites_A, {}), with_bodies(spec, {}, spec.body_sites_B),
                                 spec, with_bodies(spec, {}, {})};
  GammaFactors* slots[4] = {&t.A, &t.B, &t.AUB, &t.ref};
  for (int i = 0; i < 4; ++i)
    *slots[i] = field_factors(reduce_to_field(ground_state_covariance(variants[i]), variants[i]), &cross[i]);
  t.max_cross_correlation = *std::max_element(cross, cross + 4);
  t.gh_eligible = t.max_cross_correlation < kCrossCorrelationTolerance;
  return t;
}

NonThermalityWitness nonthermality_witness(int N, double omega_p, double omega_0, double field_mass) {
  ChainSpec spec;
  spec.N = N;
  spec.omega_p = omega_p;
  spec.omega_0 = omega_0;
  spec.field_mass = field_mass;
  for (int j = 0; j < N; ++j) spec.body_sites_A.push_back(j);
  const GammaFactors f = field_factors(reduce_to_field(ground_state_covariance(spec), spec));
  NonThermalityWitness w;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  // Circulant G, H: Fourier eigenvalues from the first row; modes q and N - q coincide.
  for (int q = 0; q <= N / 2; ++q) {
    const double k = 2.0 * std::numbers::pi * q / N;
    double g = 0.0;
    double h = 0.0;
    for (int j = 0; j < N; ++j) {
      g += f.G(0, j) * std::cos(k * j);
      h += f.H(0, j) * std::cos(k * j);
    }
    const double mu = 2.0 * std::sqrt(g * h);
    WitnessMode m;
    m.k = k;
    m.mu = mu;
    m.E = mu > 1.0 ? mode_thermo(mu).E : kInfiniteEnergy;
    m.omega_free = std::sqrt(field_mass * field_mass + 4.0 * std::pow(std::sin(0.5 * k), 2));
    m.ratio = m.E / m.omega_free;
    lo = std::min(lo, m.ratio);
    hi = std::max(hi, m.ratio);
    w.modes.push_back(m);
  }
  w.spread = hi / lo - 1.0;
  return w;
}

}  // namespace dispent
