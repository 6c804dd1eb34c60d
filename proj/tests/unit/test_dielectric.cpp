#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "dispent/dielectric.hpp"
#include "dispent/errors.hpp"

using namespace dispent;

TEST(ChiIw, LorentzUndamped) { EXPECT_DOUBLE_EQ(chi_iw(Lorentz{1, 1, 0}, 1.0), 0.5); }

TEST(ChiIw, Plasma) { EXPECT_DOUBLE_EQ(chi_iw(Plasma{2}, 2.0), 1.0); }

TEST(ChiIw, FreeVanishes) {
  for (double w : {1e-6, 1.0, 1e6}) EXPECT_EQ(chi_iw(Free{}, w), 0.0);
}

TEST(ChiIw, RejectsNonPositiveFrequency) {
  EXPECT_THROW(chi_iw(Lorentz{1, 1, 0}, 0.0), DomainError);
  EXPECT_THROW(chi_iw(Plasma{1}, -1.0), DomainError);
}

TEST(ChiIw, PositiveAndDecreasing) {
  const SusceptibilityModel m = Lorentz{1.3, 0.7, 0.4};
  double prev = chi_iw(m, 1e-3);
  for (double w = 2e-3; w < 1e3; w *= 1.5) {
    const double c = chi_iw(m, w);
    EXPECT_GT(c, 0.0);
    EXPECT_LT(c, prev);
    prev = c;
  }
}

TEST(ChiIw, HighFrequencyTail) {
  for (const SusceptibilityModel& m : {SusceptibilityModel{Lorentz{1.5, 2.0, 0.3}}, SusceptibilityModel{Plasma{1.5}}}) {
    const double w = 1e6 * 2.0;
    EXPECT_NEAR(w * w * chi_iw(m, w) / (1.5 * 1.5), 1.0, 1e-6) << describe(m);
  }
}

TEST(EpsIwK, LorentzIgnoresMomentum) {
  EXPECT_DOUBLE_EQ(eps_iw_k(Lorentz{1, 1, 0.5}, 1.0, 7.0).value, 1.4);
}

TEST(EpsIwK, SpatiallyDispersive) {
  EXPECT_DOUBLE_EQ(eps_iw_k(SpatiallyDispersive{1, 1, 1, 0, 1}, 1.0, 1.0).value, 1.0 + 1.0 / 3.0);
}

TEST(EpsIwK, Free) { EXPECT_EQ(eps_iw_k(Free{}, 3.0, 2.0).value, 1.0); }

TEST(EpsIwK, ValidityFlag) {
  const double a = 0.5;
  EXPECT_FALSE(eps_iw_k(Lorentz{1, 1, 0}, 1.0, 6.0, a).beyond_validity);
  EXPECT_TRUE(eps_iw_k(Lorentz{1, 1, 0}, 1.0, 7.0, a).beyond_validity);
  EXPECT_FALSE(eps_iw_k(Lorentz{1, 1, 0}, 1.0, 1e9).beyond_validity);
}

TEST(Validate, RejectsNegativeParameters) {
  EXPECT_THROW(validate(Lorentz{1, 1, -0.1}), ValidationError);
  EXPECT_THROW(validate(Lorentz{-1, 1, 0}), ValidationError);
  EXPECT_THROW(validate(Plasma{-2}), ValidationError);
  EXPECT_THROW(validate(SpatiallyDispersive{0.5, 1, 1, 0, 1}), ValidationError);
  EXPECT_NO_THROW(validate(Lorentz{1, 0, 0}));
}

TEST(ResonanceForm, ReproducesPermittivity) {
  const SusceptibilityModel models[] = {Free{}, Plasma{1.2}, Lorentz{0.4, 2.0, 0.7},
                                        SpatiallyDispersive{1.5, 0.8, 0.3, 0.2, 1.1}};
  for (const auto& m : models)
    for (double k : {0.0, 0.5, 3.0})
      for (double w : {0.01, 1.0, 40.0}) {
        const ResonanceForm r = resonance_form(m, k);
        const double eps = r.eps_inf + r.P / (w * w + r.gamma * w + r.Omega2);
        EXPECT_NEAR(eps, eps_iw_k(m, w, k).value, 1e-14 * eps) << describe(m);
      }
}

TEST(Describe, NamesTheVariant) {
  EXPECT_EQ(describe(Free{}), "free");
  EXPECT_EQ(describe(Lorentz{0.1, 2, 3}), "lorentz(omega_p=0.1,omega_0=2,gamma=3)");
}
