#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "dispent/asymptotics.hpp"
#include "dispent/errors.hpp"
#include "dispent/gaussian_core.hpp"
#include "dispent/mode_spectrum.hpp"
#include "oracles.hpp"

using namespace dispent;
using std::numbers::pi;

namespace {

double B(const LorentzParams& p, double w) {
  const double w02 = p.omega_0 * p.omega_0;
  return (p.gamma * w + w02) / (w * w + p.gamma * w + w02);
}

double II_gsl(const LorentzParams& p, double k) {
  const double K2 = k * k + p.omega_p * p.omega_p;
  return oracle::qagiu([&](double w) { return B(p, w) / ((w * w + K2) * (w * w + K2)); }, 0.0, 1e-12);
}

double III_gsl(const LorentzParams& p, double k) {
  const double K2 = k * k + p.omega_p * p.omega_p;
  return oracle::qagiu([&](double w) { return B(p, w) / (w * w + K2); }, 0.0, 1e-12);
}

const LorentzParams kBattery[] = {
    {1.0, 1.0, 0.5},   // underdamped
    {0.1, 1.0, 0.1},   // underdamped, weak coupling
    {1.0, 0.1, 1.0},   // overdamped
    {0.5, 0.2, 3.0},   // strongly overdamped
    {1.0, 1.0, 0.0},   // undamped
    {0.3, 2.0, 0.0},   // undamped
};

}  // namespace

TEST(DampingRegime, Classification) {
  EXPECT_EQ(damping_regime({1, 1, 0.5}), DampingRegime::Underdamped);
  EXPECT_EQ(damping_regime({1, 0.1, 1}), DampingRegime::Overdamped);
  EXPECT_EQ(damping_regime({1, 1, 0}), DampingRegime::Undamped);
  EXPECT_EQ(damping_regime({1, 1, 2}), DampingRegime::Critical);
  EXPECT_THROW(damping_regime({1, -1, 0}), DomainError);
}

TEST(LorentzRoots, SolveTheResonancePolynomial) {
  for (const auto& p : kBattery) {
    const auto [a, b] = lorentz_roots(p);
    for (auto r : {a, b}) {
      EXPECT_LT(std::abs(r * r + p.gamma * r + p.omega_0 * p.omega_0), 1e-13);
    }
  }
}

TEST(ClosedForms, MatchGslQuadrature) {
  for (const auto& p : kBattery)
    for (double k : {0.5, 10.0, 100.0}) {
      const double ii = II_gsl(p, k), iii = III_gsl(p, k);
      EXPECT_NEAR(II_closed_form(p, k), ii, 1e-10 * ii) << p.omega_p << " " << p.omega_0 << " " << p.gamma << " " << k;
      EXPECT_NEAR(III_closed_form(p, k), iii, 1e-10 * iii) << p.omega_p << " " << p.omega_0 << " " << p.gamma << " " << k;
    }
}

TEST(ClosedForms, MatchLibraryQuadrature) {
  for (const auto& p : kBattery) {
    const double k = 100.0;
    EXPECT_NEAR(II_integral(p, k) / II_closed_form(p, k), 1.0, 1e-8);
    EXPECT_NEAR(III_integral(p, k) / III_closed_form(p, k), 1.0, 1e-8);
  }
}

TEST(ClosedForms, ContinuousAcrossCriticalDamping) {
  const double w0 = 1.0, k = 20.0;
  double prev_gap = INFINITY;
  for (double delta : {1e-2, 1e-4, 1e-6}) {
    const LorentzParams under{1.0, w0, std::sqrt(4 * w0 * w0 - delta)};
    const LorentzParams over{1.0, w0, std::sqrt(4 * w0 * w0 + delta)};
    const double gap = std::abs(II_closed_form(under, k) - II_closed_form(over, k)) / II_closed_form(over, k);
    EXPECT_LT(gap, prev_gap);
    EXPECT_LT(gap, delta);
    prev_gap = gap;
    const double g3 = std::abs(III_closed_form(under, k) - III_closed_form(over, k)) / III_closed_form(over, k);
    EXPECT_LT(g3, delta);
  }
  const LorentzParams crit{1.0, w0, 2.0 * w0};
  EXPECT_NEAR(II_closed_form(crit, k), II_gsl(crit, k), 1e-10 * II_gsl(crit, k));
}

TEST(ClosedForms, DegenerateParameters) {
  // omega_0 = 0: B = gamma / (w + gamma)
  const LorentzParams p{1.0, 0.0, 0.7};
  EXPECT_NEAR(III_closed_form(p, 5.0), III_gsl(p, 5.0), 1e-10 * III_gsl(p, 5.0));
  EXPECT_EQ(III_closed_form({1.0, 0.0, 0.0}, 5.0), 0.0);
}

TEST(LeadingForms, UndampedValues) {
  EXPECT_NEAR(II_leading({0.0, 1.0, 0.0}, 10.0), pi / 2e4, 1e-18);
  EXPECT_NEAR(III_leading({0.0, 1.0, 0.0}, 10.0), pi / 200, 1e-16);
}

TEST(LeadingForms, ConvergeToClosedForms) {
  for (const auto& p : kBattery) {
    const double e2 = std::abs(III_leading(p, 100.0) / III_closed_form(p, 100.0) - 1.0);
    const double e3 = std::abs(III_leading(p, 1000.0) / III_closed_form(p, 1000.0) - 1.0);
    // Relative corrections are O(omega_0/k, gamma/k).
    EXPECT_LT(e3, 0.2 * e2) << p.omega_p << " " << p.omega_0 << " " << p.gamma;
    EXPECT_NEAR(II_leading(p, 1000.0) / II_closed_form(p, 1000.0), 1.0, 5e-3);
  }
}

TEST(GhLargeK, FreeFieldIsExact) {
  EXPECT_EQ(gh_large_k({0.0, 1.0, 0.1}, 200.0), pi * pi / 4);
  EXPECT_EQ(gh_large_k({0.0, 1.0, 0.0}, 200.0), pi * pi / 4);
}

TEST(GhLargeK, UndampedCorrectionAgainstQuadrature) {
  const LorentzParams p{0.1, 1.0, 0.0};
  const double k = 200.0;
  const double excess = mode_decomposition(Lorentz{0.1, 1.0, 0.0}, k).excess;
  const double ratio = excess / (gh_large_k(p, k) - pi * pi / 4);
  EXPECT_GE(ratio, 0.9);
  EXPECT_LE(ratio, 1.1);
}

TEST(GhLargeK, CompleteLeadingFormAgainstQuadrature) {
  const LorentzParams p{0.1, 1.0, 0.1};
  const double k = 200.0;
  const double excess = mode_decomposition(Lorentz{0.1, 1.0, 0.1}, k).excess;
  const double ratio = excess / (gh_large_k_complete(p, k) - pi * pi / 4);
  EXPECT_GE(ratio, 0.95);
  EXPECT_LE(ratio, 1.05);
}

TEST(GhLargeK, DampedLawApproachesQuadratureSlowly) {
  // The log k law omits an O(1/k^3) constant; the ratio must fall toward 1 as k grows.
  const LorentzParams p{0.1, 1.0, 0.1};
  double prev = INFINITY;
  for (double k : {100.0, 1000.0, 10000.0}) {
    const double ratio = mode_decomposition(Lorentz{0.1, 1.0, 0.1}, k).excess / (gh_large_k(p, k) - pi * pi / 4);
    EXPECT_GT(ratio, 1.0);
    EXPECT_LT(ratio, prev);
    prev = ratio;
  }
}

TEST(MuLargeK, FirstOrderOccupation) {
  // mu - 1 ~ 2e-11 here, so only about five digits survive the subtraction.
  const LorentzParams p{0.1, 1.0, 0.1};
  const double k = 300.0;
  EXPECT_NEAR((mu_large_k(p, k) - 1.0) * pi * k * k * k / (0.01 * 0.1 * std::log(k)), 1.0, 1e-4);
}

TEST(EntropyIntegrandLargeK, FreeFieldIsZero) {
  EXPECT_EQ(entropy_integrand_large_k({0.0, 1.0, 0.1}, 500.0), 0.0);
}

TEST(EntropyIntegrandLargeK, UndampedAgainstModeSpectrum) {
  const double k = 500.0;
  const double direct = mode_record(Lorentz{0.1, 1.0, 0.0}, k).s_vn;
  const double ratio = direct / entropy_integrand_large_k({0.1, 1.0, 0.0}, k);
  EXPECT_GE(ratio, 0.9);
  EXPECT_LE(ratio, 1.1);
}

TEST(SmallKLimits, UndampedExactValues) {
  const SmallKLimits s = small_k_limits({1, 1, 0});
  EXPECT_NEAR(s.g_coeff, pi / (2 * std::sqrt(2.0)), 1e-15);
  EXPECT_NEAR(s.h_limit, pi / std::sqrt(8.0), 1e-15);
  EXPECT_NEAR(s.h_limit_exact, s.h_limit, 1e-15);
  EXPECT_NEAR(s.nu * s.sqrt_gh_coeff, pi, 1e-14);
  EXPECT_NEAR(s.sqrt_gh_coeff, std::sqrt(s.g_coeff * s.h_limit), 1e-14);
}

TEST(SmallKLimits, PureStateLimit) {
  const SmallKLimits s = small_k_limits({1e-4, 1, 0.2});
  EXPECT_LT(s.h_limit, 1e-7);
  EXPECT_GT(s.nu, 1e3);
  EXPECT_TRUE(std::isinf(small_k_limits({0.0, 1, 0.2}).nu));
}

TEST(SmallKLimits, GCoefficientAgainstQuadrature) {
  const double k = 1e-5;
  const double ratio = k * g_k(Lorentz{1, 1, 0.5}, k) / small_k_limits({1, 1, 0.5}).g_coeff;
  EXPECT_GE(ratio, 0.99);
  EXPECT_LE(ratio, 1.01);
}

TEST(SmallKLimits, ExactHLimitIsTheSusceptibilityIntegral) {
  const LorentzParams p{1.0, 1.0, 0.5};
  const double ref = oracle::qagiu(
      [](double w) {
        const double chi = 1.0 / (w * w + 0.5 * w + 1.0);
        return chi / (1.0 + chi);
      },
      0.0, 1e-13);
  EXPECT_NEAR(small_k_limits(p).h_limit_exact, ref, 1e-12);
  EXPECT_NEAR(h_k(Lorentz{1, 1, 0.5}, 1e-6) / ref, 1.0, 1e-4);
}

TEST(SmallKLimits, RejectsNonPositiveRadicand) {
  EXPECT_THROW(small_k_limits({0.1, 0.1, 3.0}), DomainError);
  EXPECT_THROW(small_k_limits({1.0, 0.0, 0.0}), DomainError);
}

TEST(FitLogPower, SyntheticPolylogs) {
  std::vector<double> L, v2, v3;
  for (double c = 1e2; c <= 1e5 * 1.0001; c *= std::sqrt(10.0)) {
    L.push_back(c);
    const double l = std::log(c);
    v2.push_back(0.3 + 2.0 * l * l);
    v3.push_back(-1.0 + 0.5 * l * l * l);
  }
  const CutoffFit f2 = fit_log_power(L, v2);
  EXPECT_EQ(f2.exponent_of_log, 2);
  EXPECT_NEAR(f2.prefactor, 2.0, 1e-10);
  EXPECT_NEAR(f2.offset, 0.3, 1e-8);
  const CutoffFit f3 = fit_log_power(L, v3);
  EXPECT_EQ(f3.exponent_of_log, 3);
  EXPECT_NEAR(f3.prefactor, 0.5, 1e-10);
  EXPECT_GT(f3.residual_ratio, 1e3);
}

TEST(FitLogPower, ZeroEntropySkipsFit) {
  const CutoffFit f = fit_log_power({1e2, 1e3, 1e4}, {0.0, 0.0, 0.0});
  EXPECT_TRUE(f.skipped);
}

TEST(CutoffScalingFit, PlasmaIsSkipped) {
  const CutoffFit f = cutoff_scaling_fit(Plasma{1.0}, {1e2, 1e3, 1e4}, 3);
  EXPECT_TRUE(f.skipped);
}

TEST(CutoffScalingFit, UndampedSelectsSquaredLog) {
  std::vector<double> L;
  for (double c = 1e2; c <= 1e5 * 1.0001; c *= std::pow(10.0, 0.25)) L.push_back(c);
  const CutoffFit f = cutoff_scaling_fit(Lorentz{0.1, 1.0, 0.0}, L, 3);
  EXPECT_EQ(f.exponent_of_log, 2);
  EXPECT_GT(f.residual_ratio, 3.0);
  EXPECT_GT(f.prefactor, 0.0);
}

TEST(CutoffScalingFit, DampedSelectsCubedLog) {
  std::vector<double> L;
  for (double c = 1e2; c <= 1e5 * 1.0001; c *= std::pow(10.0, 0.25)) L.push_back(c);
  const CutoffFit f = cutoff_scaling_fit(Lorentz{0.1, 0.1, 1.0}, L, 3);
  EXPECT_EQ(f.exponent_of_log, 3);
  EXPECT_GT(f.residual_ratio, 3.0);
}

TEST(CutoffScalingFit, RejectsNarrowGrid) {
  EXPECT_THROW(cutoff_scaling_fit(Lorentz{0.1, 1, 0.1}, {10.0, 50.0, 90.0}), ValidationError);
  EXPECT_THROW(cutoff_scaling_fit(Lorentz{0.1, 1, 0.1}, {10.0, 1e4}), ValidationError);
}
