#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

namespace oracle {
namespace {

double trampoline(double x, void* p) { return (*static_cast<const Fn*>(p))(x); }

struct Workspace {
  explicit Workspace(std::size_t n) : w(gsl_integration_workspace_alloc(n)) {}
  ~Workspace() { gsl_integration_workspace_free(w); }
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;
  gsl_integration_workspace* w;
};

void check(int status, const char* what) {
  if (status != GSL_SUCCESS) throw std::runtime_error(std::string(what) + ": " + gsl_strerror(status));
}

struct HandlerGuard {
  HandlerGuard() : old(gsl_set_error_handler_off()) {}
  ~HandlerGuard() { gsl_set_error_handler(old); }
  gsl_error_handler_t* old;
};

}  // namespace

double qagiu(const Fn& f, double a, double epsrel, double epsabs) {
  HandlerGuard guard;
  Workspace ws(20000);
  gsl_function F{&trampoline, const_cast<Fn*>(&f)};
  double result = 0.0, err = 0.0;
  check(gsl_integration_qagiu(&F, a, epsabs, epsrel, 20000, ws.w, &result, &err), "qagiu");
  return result;
}

double qags(const Fn& f, double a, double b, double epsrel, double epsabs) {
  HandlerGuard guard;
  Workspace ws(20000);
  gsl_function F{&trampoline, const_cast<Fn*>(&f)};
  double result = 0.0, err = 0.0;
  check(gsl_integration_qags(&F, a, b, epsabs, epsrel, 20000, ws.w, &result, &err), "qags");
  return result;
}

double qawf_sin(const Fn& f, double freq, double epsabs) {
  HandlerGuard guard;
  Workspace ws(5000), cycle(5000);
  gsl_integration_qawo_table* table = gsl_integration_qawo_table_alloc(freq, 1.0, GSL_INTEG_SINE, 50);
  gsl_function F{&trampoline, const_cast<Fn*>(&f)};
  double result = 0.0, err = 0.0;
  const int status = gsl_integration_qawf(&F, 0.0, epsabs, 5000, ws.w, cycle.w, table, &result, &err);
  gsl_integration_qawo_table_free(table);
  check(status, "qawf");
  return result;
}

long double h_ref(long double mu) {
  if (mu == 1.0L) return 0.0L;
  const long double a = (mu + 1.0L) / 2.0L, b = (mu - 1.0L) / 2.0L;
  return a * std::log(a) - b * std::log(b);
}

Eigen::MatrixXd random_symplectic(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  auto rotation = [&]() {
    // Unitary U = X + iY from a complex QR; [[X, -Y], [Y, X]] is symplectic and orthogonal.
    Eigen::MatrixXcd Z(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) Z(i, j) = {normal(rng), normal(rng)};
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
    Eigen::MatrixXcd U = qr.householderQ();
    Eigen::MatrixXd O(2 * n, 2 * n);
    O << U.real(), -U.imag(), U.imag(), U.real();
    return O;
  };
  Eigen::VectorXd s(2 * n);
  std::uniform_real_distribution<double> squeeze(-0.7, 0.7);
  for (int i = 0; i < n; ++i) {
    const double r = squeeze(rng);
    s(i) = std::exp(r);
    s(n + i) = std::exp(-r);
  }
  return rotation() * s.asDiagonal() * rotation();
}

Eigen::MatrixXd random_spd(int n, double lo, double hi, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uni(lo, hi);
  Eigen::MatrixXd Z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Z(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Z);
  Eigen::MatrixXd Q = qr.householderQ();
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = uni(rng);
  Eigen::MatrixXd A = Q * d.asDiagonal() * Q.transpose();
  return 0.5 * (A + A.transpose());
}

Eigen::MatrixXd ground_covariance_ld(const Eigen::MatrixXd& M) {
  using ML = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const int dim = static_cast<int>(M.rows());
  const int n = dim / 2;
  ML S = ML::Zero(dim, dim);
  S.topRightCorner(n, n).setIdentity();
  S.bottomLeftCorner(n, n) = -ML::Identity(n, n);
  const ML Ml = M.cast<long double>();
  const ML A = S * Ml;
  const ML C = -(A * A);
  // Denman-Beavers: Y -> C^{1/2}, Z -> C^{-1/2}; scale first so the iteration starts near 1.
  const long double scale = C.diagonal().cwiseAbs().maxCoeff();
  ML Y = C / scale, Z = ML::Identity(dim, dim);
  for (int it = 0; it < 100; ++it) {
    const ML Yi = Y.partialPivLu().inverse();
    const ML Zi = Z.partialPivLu().inverse();
    const ML Yn = 0.5L * (Y + Zi);
    const ML Zn = 0.5L * (Z + Yi);
    const long double change = (Yn - Y).cwiseAbs().maxCoeff();
    Y = Yn;
    Z = Zn;
    if (change < 1e-17L) break;
  }
  const ML Cinv_sqrt = Z / std::sqrt(scale);
  const ML gamma = -(A * Cinv_sqrt * S);
  const ML sym = 0.5L * (gamma + gamma.transpose());
  return sym.cast<double>();
}

}  // namespace oracle
