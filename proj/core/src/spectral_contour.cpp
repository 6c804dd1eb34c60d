#include "dispent/spectral_contour.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dispent/errors.hpp"
#include "dispent/gaussian_core.hpp"

namespace dispent {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

void check_factors(const GammaFactors& f, Eigen::Index n, const char* name) {
  if (f.G.rows() != n || f.G.cols() != n || f.H.rows() != n || f.H.cols() != n)
    throw ValidationError(std::string("gamma triple: factor ") + name + " has the wrong shape");
  const double sg = (f.G - f.G.transpose()).cwiseAbs().maxCoeff();
  const double sh = (f.H - f.H.transpose()).cwiseAbs().maxCoeff();
  if (sg > 1e-10 * std::max(1.0, f.G.cwiseAbs().maxCoeff()) || sh > 1e-10 * std::max(1.0, f.H.cwiseAbs().maxCoeff()))
    throw ValidationError(std::string("gamma triple: factor ") + name + " is not symmetric");
}

double logdet_spd(const Eigen::MatrixXd& m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) throw DomainError("log-determinant of a matrix that is not positive definite");
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

double mode_entropy_from_gamma(double lambda, double alpha) {
  // validate() admits eigenvalues down to 1/4 - 1e-9; those modes are pure.
  const double mu = std::max(1.0, 2.0 * std::sqrt(std::max(lambda, 0.0)));
  return alpha == 1.0 ? binary_entropy(mu) : renyi_mode(mu, alpha);
}

double spectral_sum(const GammaFactors& f, double alpha) {
  double s = 0.0;
  for (double l : gamma_spectrum(f)) s += mode_entropy_from_gamma(l, alpha);
  return s;
}

}  // namespace

Eigen::MatrixXd gamma_product(const GammaFactors& f) { return f.G * f.H; }

Eigen::VectorXd gamma_spectrum(const GammaFactors& f) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eg(f.G);
  if (eg.eigenvalues().minCoeff() <= 0.0) throw DomainError("gamma factor G is not positive definite");
  const Eigen::MatrixXd Gh = eg.eigenvectors() * eg.eigenvalues().cwiseSqrt().asDiagonal() * eg.eigenvectors().transpose();
  Eigen::MatrixXd S = Gh * f.H * Gh;
  S = 0.5 * (S + S.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

void validate(const GammaTriple& t) {
  const Eigen::Index n = t.ref.G.rows();
  if (n == 0) throw ValidationError("gamma triple is empty");
  const std::pair<const GammaFactors*, const char*> parts[] = {
      {&t.A, "A"}, {&t.B, "B"}, {&t.AUB, "AUB"}, {&t.ref, "0"}};
  for (const auto& [f, name] : parts) {
    check_factors(*f, n, name);
    const Eigen::VectorXd ev = gamma_spectrum(*f);
    if (ev.minCoeff() < 0.25 - 1e-9) {
      std::ostringstream os;
      os << "gamma triple: uncertainty bound violated for " << name << " (eigenvalue " << ev.minCoeff()
         << " < 1/4)";
      throw DomainError(os.str());
    }
  }
}

Eigen::MatrixXcd build_K(const Eigen::MatrixXd& Gamma, const Eigen::MatrixXd& Gamma0, cd x) {
  const Eigen::Index n = Gamma0.rows();
  if (Gamma.rows() != n || Gamma.cols() != n || Gamma0.cols() != n) throw ValidationError("build_K: shape mismatch");
  Eigen::MatrixXcd R = x * Eigen::MatrixXcd::Identity(n, n) - Gamma0.cast<cd>();
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(R);
  if (!(lu.rcond() > 1e-14)) {
    std::ostringstream os;
    os << "build_K: x = " << x << " is in the spectrum of Gamma_0";
    throw NumericalError(os.str());
  }
  return lu.solve((Gamma - Gamma0).cast<cd>());
}

cd relative_logdet(const GammaTriple& t, cd x) {
  const Eigen::MatrixXd G0 = gamma_product(t.ref);
  const Eigen::Index n = G0.rows();
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd KA = build_K(gamma_product(t.A), G0, x);
  const Eigen::MatrixXcd KB = build_K(gamma_product(t.B), G0, x);
  const Eigen::MatrixXcd KAB = build_K(gamma_product(t.AUB), G0, x);
  Eigen::PartialPivLU<Eigen::MatrixXcd> la(I - KA);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lb((I - KB).transpose());
  if (!(la.rcond() > 1e-14) || !(lb.rcond() > 1e-14)) {
    std::ostringstream os;
    os << "relative_logdet: 1 - K is singular at x = " << x;
    throw NumericalError(os.str());
  }
  const Eigen::MatrixXcd inner = KA * KB + KAB - KA - KB;
  // X (1-K_B)^-1 = ((1-K_B)^-T X^T)^T
  const Eigen::MatrixXcd right = lb.solve(la.solve(inner).transpose()).transpose();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(I - right, false);
  if (es.info() != Eigen::Success) throw NumericalError("relative_logdet: eigensolver failed");
  cd s = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) s += std::log(es.eigenvalues()[i]);
  return s;
}

cd contour_antiderivative(cd x, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("contour weight: alpha must be positive");
  const cd mu = 2.0 * std::sqrt(x);
  const cd a = 0.5 * (mu + 1.0);
  const cd b = 0.5 * (mu - 1.0);
  if (alpha == 1.0) {
    const cd blogb = std::abs(b) == 0.0 ? cd(0.0) : b * std::log(b);
    return a * std::log(a) - blogb;
  }
  return std::log(std::pow(a, alpha) - std::pow(b, alpha)) / (alpha - 1.0);
}

cd contour_weight(cd x, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("contour weight: alpha must be positive");
  const cd r = std::sqrt(x);
  if (alpha == 1.0) return std::log((r + 0.5) / (r - 0.5)) / (2.0 * r);
  if (alpha == 2.0) return 1.0 / (2.0 * x);
  const cd A = 2.0 * r + 1.0;
  const cd B = 2.0 * r - 1.0;
  return alpha * (std::pow(A, alpha - 1.0) - std::pow(B, alpha - 1.0)) /
         ((alpha - 1.0) * r * (std::pow(A, alpha) - std::pow(B, alpha)));
}

ContourResult sR_contour(const GammaTriple& t, double alpha, const ContourOptions& opt) {
  validate(t);
  if (!(alpha >= 1.0)) throw DomainError("sR_contour: alpha must be 1 (von Neumann) or larger");
  if (!(opt.abscissa >= 0.25)) throw DomainError("sR_contour: the line must lie right of the branch point 1/4");
  if (!(opt.t_lo > 0.0)) throw ValidationError("sR_contour: t_lo must be positive");
  const double c = opt.abscissa;
  auto g = [&](double s) {
    const cd x(c, s);
    return contour_weight(x, alpha) * relative_logdet(t, x);
  };
  double scale = 0.25;
  for (const GammaFactors* f : {&t.A, &t.B, &t.AUB, &t.ref}) scale = std::max(scale, gamma_spectrum(*f).maxCoeff());
  const ComplexQuadratureResult r = integrate_vertical_line(g, 2.0, opt.quad, opt.t_lo, scale);
  // int_{-t_lo}^{t_lo} f'(x) L(x) dt with L frozen: -i [f(x_lo) - f(c)] L(x_lo) and its conjugate.
  const cd xlo(c, opt.t_lo);
  const cd end = -cd(0.0, 1.0) * (contour_antiderivative(xlo, alpha) - contour_antiderivative(cd(c, 0.0), alpha)) *
                 relative_logdet(t, xlo);
  ContourResult out;
  out.value = r.value.real() / (2.0 * kPi) + end.real() / kPi;
  out.imag_residual = r.value.imag() / (2.0 * kPi);
  out.abs_error_estimate = r.abs_error_estimate / (2.0 * kPi);
  return out;
}

double sR_spectral(const GammaTriple& t, double alpha) {
  validate(t);
  return spectral_sum(t.AUB, alpha) - spectral_sum(t.A, alpha) - spectral_sum(t.B, alpha) +
         spectral_sum(t.ref, alpha);
}

double s2_relative_direct(const GammaTriple& t) {
  validate(t);
  auto ld = [](const GammaFactors& f) {
    return logdet_spd(f.G) + logdet_spd(f.H) + static_cast<double>(f.G.rows()) * std::log(4.0);
  };
  return 0.5 * (ld(t.AUB) - ld(t.A) - ld(t.B) + ld(t.ref));
}

double s2_second_order(const GammaTriple& t) {
  validate(t);
  const Eigen::Index n = t.ref.G.rows();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd dA = 4.0 * gamma_product(t.A) - I;
  const Eigen::MatrixXd dB = 4.0 * gamma_product(t.B) - I;
  const Eigen::MatrixXd dAB = 4.0 * gamma_product(t.AUB) - I;
  return 0.5 * (dAB - dA - dB - dA * dB).trace();
}

}  // namespace dispent
