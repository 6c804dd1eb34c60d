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

double eps_lorentz(const Lorentz& l, double w) {
  return 1.0 + l.omega_p * l.omega_p / (w * w + l.gamma * w + l.omega_0 * l.omega_0);
}

// Composite trapezoid in t with w = t / (1 - t); `tail` is the limit of
// f(w) / (1 - t)^2 as t -> 1.
double trapezoid(const std::function<double(double)>& f, double tail, long panels = 1000000) {
  const double h = 1.0 / static_cast<double>(panels);
  double s = 0.5 * (f(0.0) + tail);
  for (long i = 1; i < panels; ++i) {
    const double t = static_cast<double>(i) * h;
    const double u = 1.0 - t;
    s += f(t / u) / (u * u);
  }
  return s * h;
}

double g_oracle(const Lorentz& l, double k) {
  return trapezoid([&](double w) { return 1.0 / (w * w * eps_lorentz(l, w) + k * k); }, 1.0);
}

double h_oracle(const Lorentz& l, double k) {
  return trapezoid(
      [&](double w) {
        const double chi = eps_lorentz(l, w) - 1.0;
        return (k * k + w * w * chi) / (w * w * eps_lorentz(l, w) + k * k);
      },
      l.omega_p * l.omega_p + k * k);
}

}  // namespace

TEST(GK, FreeField) { EXPECT_NEAR(g_k(Free{}, 2.0), pi / 4, 1e-12); }

TEST(GK, PlasmaIsMassiveField) { EXPECT_NEAR(g_k(Plasma{3.0}, 4.0), pi / 10, 1e-12); }

TEST(GK, LorentzAgainstTrapezoid) {
  const Lorentz l{1, 1, 0.5};
  EXPECT_NEAR(g_k(l, 1.0), g_oracle(l, 1.0), 1e-10);
}

TEST(GK, LorentzAgainstGsl) {
  const Lorentz l{0.7, 1.3, 0.9};
  for (double k : {0.05, 1.0, 20.0}) {
    const double ref = oracle::qagiu([&](double w) { return 1.0 / (w * w * eps_lorentz(l, w) + k * k); }, 0.0, 1e-13);
    EXPECT_NEAR(g_k(l, k), ref, 1e-10 * ref) << k;
  }
}

TEST(GK, RejectsNonPositiveMomentum) {
  EXPECT_THROW(g_k(Free{}, 0.0), DomainError);
  EXPECT_THROW(h_k(Free{}, -1.0), DomainError);
}

TEST(HK, FreeField) { EXPECT_NEAR(h_k(Free{}, 2.0), pi, 1e-12); }

TEST(HK, PlasmaIsMassiveField) { EXPECT_NEAR(h_k(Plasma{3.0}, 4.0), 2.5 * pi, 1e-11); }

TEST(HK, LorentzAgainstTrapezoid) {
  const Lorentz l{1, 1, 0.5};
  EXPECT_NEAR(h_k(l, 1.0), h_oracle(l, 1.0), 1e-9);
}

TEST(HK, LargeMomentumIdentityWithIII) {
  const Lorentz l{0.1, 1, 0.1};
  const double k = 50.0;
  const double wp2 = l.omega_p * l.omega_p;
  const double rhs = (k * k + wp2) * g_k(l, k) - wp2 * III_closed_form({0.1, 1, 0.1}, k);
  EXPECT_NEAR(h_k(l, k) / rhs, 1.0, 1e-2);
}

TEST(ModeRecord, FreeFieldIsPure) {
  for (double k : {1e-3, 1.0, 1e3}) {
    const ModeRecord r = mode_record(Free{}, k);
    EXPECT_EQ(r.mu, 1.0);
    EXPECT_EQ(r.E, kInfiniteEnergy);
    EXPECT_EQ(r.s_vn, 0.0);
  }
}

TEST(ModeRecord, PlasmaIsPure) {
  for (double k : {1e-3, 1.0, 1e3}) {
    const ModeRecord r = mode_record(Plasma{2.0}, k);
    EXPECT_EQ(r.mu, 1.0);
    EXPECT_EQ(r.s_vn, 0.0);
  }
}

TEST(ModeRecord, LorentzAgainstTrapezoid) {
  const Lorentz l{1, 1, 0.5};
  for (double k : {0.01, 0.1, 1.0, 10.0}) {
    const double g = g_oracle(l, k), h = h_oracle(l, k);
    const double mu = 2.0 / pi * std::sqrt(g * h);
    const ModeRecord r = mode_record(l, k);
    EXPECT_NEAR(r.g, g, 1e-9 * g) << k;
    EXPECT_NEAR(r.h, h, 1e-9 * h) << k;
    EXPECT_NEAR(r.mu, mu, 1e-9) << k;
    EXPECT_NEAR(r.n, (mu - 1) / 2, 1e-8 * r.n + 1e-10) << k;
    EXPECT_NEAR(r.s_vn, static_cast<double>(oracle::h_ref(mu)), 1e-7 * r.s_vn + 1e-10) << k;
    EXPECT_NEAR(r.s_2, std::log(mu), 1e-9) << k;
    EXPECT_EQ(r.beta_omega, r.E);
  }
}

TEST(ModeRecord, DecaysToPureAtLargeMomentum) {
  const ModeRecord r = mode_record(Lorentz{1, 1, 0.5}, 1e3);
  EXPECT_GT(r.n, 0.0);
  EXPECT_LT(r.n, 1e-6);
  EXPECT_GE(r.mu, 1.0);
}

TEST(ModeRecord, ExcessAgreesWithDirectProductWhereResolvable) {
  const Lorentz l{1, 1, 0.5};
  for (double k : {0.3, 3.0}) {
    const ModeDecomposition d = mode_decomposition(l, k);
    EXPECT_NEAR(d.excess, d.g * d.h - pi * pi / 4, 1e-9 * d.g * d.h) << k;
  }
}

TEST(DispersionCurve, SmallMomentumLaw) {
  const Lorentz l{1, 1, 0};
  const double nu = small_k_limits({1, 1, 0}).nu;
  const double k = 1e-4;
  const auto rec = dispersion_curve(l, {k});
  EXPECT_NEAR(rec[0].E / (nu * std::sqrt(k)), 1.0, 0.05);
}

TEST(DispersionCurve, EffectiveEnergyIsNotLinear) {
  const auto rec = dispersion_curve(Lorentz{1, 1, 0.5}, {0.01, 0.1, 1.0, 10.0});
  double lo = INFINITY, hi = 0.0;
  for (const auto& r : rec) {
    lo = std::min(lo, r.E / r.k);
    hi = std::max(hi, r.E / r.k);
  }
  EXPECT_GT(hi / lo, 2.0);
}

TEST(DispersionCurve, OrderedByCoupling) {
  const double k = 0.01;
  const auto a = mode_record(Lorentz{0.5, 1, 0.5}, k);
  const auto b = mode_record(Lorentz{1.0, 1, 0.5}, k);
  const auto c = mode_record(Lorentz{2.0, 1, 0.5}, k);
  EXPECT_LT(a.mu, b.mu);
  EXPECT_LT(b.mu, c.mu);
  EXPECT_GT(a.E, b.E);
  EXPECT_GT(b.E, c.E);
}

TEST(DispersionCurve, RejectsUnsortedGrid) {
  EXPECT_THROW(dispersion_curve(Free{}, {1.0, 0.5}), ValidationError);
}

TEST(DispersionCurve, ParallelMatchesSerial) {
  std::vector<double> grid;
  for (double k = 0.01; k < 100; k *= 2) grid.push_back(k);
  const auto all = dispersion_curve(Lorentz{1, 1, 0.5}, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_EQ(all[i].mu, mode_record(Lorentz{1, 1, 0.5}, grid[i]).mu);
}

TEST(SoftModes, ThreeDimensionalPowerLaws) {
  const Lorentz l{1, 1, 0};
  const auto lo = soft_mode_aggregates(l, 1e-4, 3);
  const auto hi = soft_mode_aggregates(l, 1e-3, 3);
  const double rN = (lo.N / std::pow(1e-4, 2.5)) / (hi.N / std::pow(1e-3, 2.5));
  const double rE = (lo.E_total / std::pow(1e-4, 3.5)) / (hi.E_total / std::pow(1e-3, 3.5));
  EXPECT_NEAR(rN, 1.0, 0.03);
  EXPECT_NEAR(rE, 1.0, 0.03);
}

TEST(SoftModes, OneDimensionalLogDivergence) {
  const Lorentz l{1, 1, 0};
  const double nu = small_k_limits({1, 1, 0}).nu;
  const double k_min = 1e-3, eps = 1e-10;
  const double diff = soft_mode_aggregates(l, k_min, 1, eps).delta_N2 - soft_mode_aggregates(l, k_min, 1, 10 * eps).delta_N2;
  EXPECT_NEAR(diff / (std::log(10.0) / (nu * nu)), 1.0, 0.05);
}

TEST(SoftModes, FreeFieldHasNoQuanta) {
  const auto a = soft_mode_aggregates(Free{}, 1e-2, 3);
  EXPECT_EQ(a.N, 0.0);
  EXPECT_EQ(a.E_total, 0.0);
  EXPECT_EQ(a.delta_N2, 0.0);
}

TEST(SoftModes, OneDimensionNeedsInfraredCutoff) {
  EXPECT_THROW(soft_mode_aggregates(Lorentz{1, 1, 0}, 1e-3, 1), ConfigError);
}

TEST(EntropyDensity, PlasmaVanishes) {
  for (double L : {10.0, 1e3}) EXPECT_NEAR(entropy_density(Plasma{1.5}, L, 3).value, 0.0, 1e-10);
}

TEST(EntropyDensity, FreeVanishesExactly) { EXPECT_EQ(entropy_density(Free{}, 100.0, 3).value, 0.0); }

TEST(EntropyDensity, GrowsWithCutoff) {
  const auto s = entropy_density_scan(Lorentz{0.1, 1, 0.1}, {1e2, 1e3, 1e4}, 3);
  EXPECT_GT(s[0], 0.0);
  EXPECT_GT(s[1], s[0]);
  EXPECT_GT(s[2], s[1]);
}

TEST(EntropyDensity, ScanMatchesSingleEvaluations) {
  const Lorentz l{0.5, 1, 0.3};
  const auto s = entropy_density_scan(l, {10.0, 100.0}, 3);
  EXPECT_NEAR(s[1], entropy_density(l, 100.0, 3).value, 1e-7 * s[1]);
}

TEST(EntropyDensity, OneDimensionalMatchesGsl) {
  // (2 pi)^-1 * 2 int_0^L h(mu_k) dk
  const Lorentz l{1, 1, 0.5};
  const double L = 5.0;
  const double ref =
      oracle::qags([&](double k) { return k <= 0 ? 0.0 : mode_record(l, k).s_vn; }, 0.0, L, 1e-9) / pi;
  EXPECT_NEAR(entropy_density(l, L, 1).value, ref, 1e-7 * ref);
}

TEST(UnitSphere, Areas) {
  EXPECT_DOUBLE_EQ(unit_sphere_area(1), 2.0);
  EXPECT_DOUBLE_EQ(unit_sphere_area(2), 2.0 * pi);
  EXPECT_DOUBLE_EQ(unit_sphere_area(3), 4.0 * pi);
  EXPECT_THROW(unit_sphere_area(4), DomainError);
}
