#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <tuple>

#include "heisflow/profiles.hpp"
#include "heisflow/types.hpp"

using namespace heisflow;

TEST(T1X, SlopeAtOrigin) {
  EXPECT_DOUBLE_EQ(t1x_profile(1, 2, 0, 0.0, +1).d1, 1.0);
  EXPECT_DOUBLE_EQ(t1x_profile(1, 2, 0, 0.0, -1).d1, -1.0);
}

TEST(T1X, SlopeSolvesCubicOde) {
  for (double A : {1.0, -0.7})
    for (int sign : {+1, -1})
      for (double u : linspace(0.2, 1.0, 41)) {
        if (2.0 * std::exp(4 * A * u) <= 1.0) continue;
        const ProfileValue p = t1x_profile(A, 2.0, 0.0, u, sign);
        EXPECT_NEAR(p.d2 + 2 * A * p.d1 * (1 + p.d1 * p.d1), 0.0, 1e-8);
      }
}

TEST(T1X, DerivativesMatchFiniteDifferences) {
  const double h = 1e-5;
  for (double u : {0.3, 0.7}) {
    const ProfileValue p = t1x_profile(1, 2, 0.5, u);
    EXPECT_NEAR((t1x_profile(1, 2, 0.5, u + h).value - t1x_profile(1, 2, 0.5, u - h).value) / (2 * h), p.d1, 1e-8);
    EXPECT_NEAR((t1x_profile(1, 2, 0.5, u + h).d1 - t1x_profile(1, 2, 0.5, u - h).d1) / (2 * h), p.d2, 1e-7);
  }
}

TEST(T1X, BShiftsValueOnly) {
  const ProfileValue a = t1x_profile(1, 2, 0.0, 0.4), b = t1x_profile(1, 2, 3.0, 0.4);
  EXPECT_DOUBLE_EQ(b.value - 3.0, a.value);
  EXPECT_EQ(a.d1, b.d1);
  EXPECT_EQ(a.d2, b.d2);
}

TEST(T1X, DomainViolation) {
  EXPECT_THROW(t1x_profile(1, 1, 0, 0.0), DomainError);  // D e^0 = 1
  try {
    t1x_profile(1, 0.5, 0, -0.1);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.where(), -0.1);
  }
}

TEST(T1Y, GrimReaperProfile) {
  for (double u : linspace(-1.3, 1.3, 27)) {
    const ProfileValue p = t1y_profile(0.5, -1.0, 0.0, u);
    EXPECT_NEAR(p.value, -std::log(std::cos(u)), 1e-14);
    EXPECT_NEAR(p.d1, std::tan(u), 1e-12);
    EXPECT_NEAR(p.d2 - (1 + p.d1 * p.d1), 0.0, 1e-12);
  }
}

TEST(T1Y, SolvesOdeForRandomParameters) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-1.5, 1.5);
  int checked = 0;
  for (int k = 0; k < 30; ++k) {
    const double A = d(rng), B = d(rng), C = d(rng);
    if (std::abs(A) < 0.1) continue;
    const double u0 = t1y_peak(A, B, C);
    for (double du : linspace(-0.3, 0.3, 13)) {
      const double u = u0 + du / std::abs(A);
      const ProfileValue p = t1y_profile(A, B, C, u);
      EXPECT_NEAR(p.d2 - 2 * A * (1 + p.d1 * p.d1), 0.0, 1e-8 * (1 + std::abs(p.d2)));
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(T1Y, SlopeVanishesAtPeak) {
  for (auto [A, B, C] : {std::tuple{0.5, -1.0, 0.0}, std::tuple{1.2, 0.3, 0.8}, std::tuple{-0.7, 0.4, -0.5}})
    EXPECT_NEAR(t1y_profile(A, B, C, t1y_peak(A, B, C)).d1, 0.0, 1e-12);
}

TEST(T1Y, LogOfNonPositive) {
  EXPECT_THROW(t1y_profile(0.5, -1.0, 0.0, 2.0), DomainError);  // cos 2 < 0
}

TEST(T1R, InitialSlopes) {
  EXPECT_EQ(t1r_profile(0.9, 0.0, 0.0, 0.0, 0.5, 10).d1[0], 0.0);
  EXPECT_NEAR(t1r_profile(0.9, std::numbers::pi / 4, 0.0, 0.0, 0.5, 10).d1[0], 1.0, 1e-15);
}

TEST(T1R, SatisfiesSecondOrderEquation) {
  const double A = 0.4;
  const ProfileSolution sol = t1r_profile(A, 0.1, 0.3, 0.0, 1.0, 2000);
  ASSERT_FALSE(sol.truncated);
  for (std::size_t i = 1; i + 1 < sol.size(); ++i) {
    const double h = sol.u[1] - sol.u[0];
    const double f = sol.value[i], d1 = (sol.value[i + 1] - sol.value[i - 1]) / (2 * h);
    const double d2 = (sol.value[i + 1] - 2 * f + sol.value[i - 1]) / (h * h);
    EXPECT_NEAR(A * (1 + d1 * d1) * (2 * sol.u[i] + 2 * f * d1) - d2, 0.0, 1e-6);
  }
}

TEST(T1R, StoredDerivativesConsistent) {
  const ProfileSolution sol = t1r_profile(0.4, 0.1, 0.3, 0.0, 1.0, 4000);
  const double h = sol.u[1] - sol.u[0];
  for (std::size_t i = 1; i + 1 < sol.size(); ++i) {
    EXPECT_NEAR((sol.value[i + 1] - sol.value[i - 1]) / (2 * h), sol.d1[i], 1e-6);
    EXPECT_NEAR((sol.d1[i + 1] - sol.d1[i - 1]) / (2 * h), sol.d2[i], 1e-5);
  }
}

TEST(T1R, StopsBeforePole) {
  // Phase A(u² + f²) + B climbs to π/2.
  const ProfileSolution sol = t1r_profile(1.0, 1.2, 0.0, 0.0, 2.0, 2000);
  EXPECT_TRUE(sol.truncated);
  EXPECT_FALSE(sol.stop_reason.empty());
  EXPECT_LT(sol.u.back(), 2.0);
  const double ph = 1.0 * (sol.u.back() * sol.u.back() + sol.value.back() * sol.value.back()) + 1.2;
  EXPECT_GE(std::abs(std::cos(ph)), kPoleMargin);
}

TEST(T1R, RejectsPoleAtStartAndTooFewSteps) {
  EXPECT_THROW(t1r_profile(1.0, std::numbers::pi / 2, 0.0, 0.0, 1.0, 100), DomainError);
  EXPECT_THROW(t1r_profile(1.0, 0.0, 0.0, 0.0, 1.0, 1), Error);
}

TEST(T1R, CoarseStepDoesNotJumpPole) {
  const ProfileSolution sol = t1r_profile(1.0, 1.2, 0.0, 0.0, 2.0, 20);
  EXPECT_TRUE(sol.truncated);
  for (std::size_t i = 0; i < sol.size(); ++i)
    EXPECT_GT(std::cos(sol.u[i] * sol.u[i] + sol.value[i] * sol.value[i] + 1.2), 0.0);
}

TEST(Riccati, InitialSlopes) {
  const double A = 0.7, y0 = 0.9;
  const ProfileSolution c = riccati_solve(RiccatiKind::ConstantForcing, A, y0, 0.0, 0.5, 100);
  EXPECT_NEAR(c.aux_d1[0], 4 * A * (y0 * y0 / 4 + 1), 1e-15);
  const ProfileSolution l = riccati_solve(RiccatiKind::LinearForcing, A, y0, 0.0, 0.5, 100);
  EXPECT_EQ(l.aux_d1[0], 0.0);
}

TEST(Riccati, StepHalvingAgreement) {
  for (RiccatiKind kind : {RiccatiKind::ConstantForcing, RiccatiKind::LinearForcing}) {
    const ProfileSolution a = riccati_solve(kind, 0.5, 0.2, -0.5, 0.5, 1000);
    const ProfileSolution b = riccati_solve(kind, 0.5, 0.2, -0.5, 0.5, 2000);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a.aux[i], b.aux[2 * i], 1e-8);
  }
}

TEST(Riccati, ReconstructsG) {
  RiccatiOptions opt;
  opt.v_star = 0.3;
  opt.g0 = 1.5;
  const ProfileSolution s = riccati_solve(RiccatiKind::ConstantForcing, 0.5, 0.2, -0.5, 0.5, 4000, opt);
  EXPECT_EQ(s.value[0], 1.5);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_NEAR(2 * s.d1[i] - opt.v_star, s.aux[i], 1e-15);
    EXPECT_NEAR(2 * s.d2[i], s.aux_d1[i], 1e-15);
  }
  const double h = s.u[1] - s.u[0];
  for (std::size_t i = 1; i + 1 < s.size(); ++i)
    EXPECT_NEAR((s.value[i + 1] - s.value[i - 1]) / (2 * h), s.d1[i], 1e-6);
}

TEST(Riccati, BlowUpTruncates) {
  const ProfileSolution s = riccati_solve(RiccatiKind::ConstantForcing, 5.0, 1.0, 0.0, 10.0, 10000);
  EXPECT_TRUE(s.truncated);
  EXPECT_LT(s.u.back(), 10.0);
  for (double y : s.aux) EXPECT_LT(std::abs(y), 1e8);
}

TEST(Riccati, GeneralKindNeedsRhs) {
  EXPECT_THROW(riccati_solve(RiccatiKind::General, 1.0, 0.0, 0.0, 1.0, 10), Error);
  RiccatiOptions opt;
  opt.general = [](double, double y) { return -y; };
  const ProfileSolution s = riccati_solve(RiccatiKind::General, 1.0, 1.0, 0.0, 1.0, 1000, opt);
  EXPECT_NEAR(s.aux.back(), std::exp(-1.0), 1e-12);
  EXPECT_THROW(riccati_solve(RiccatiKind::ConstantForcing, 1.0, 0.0, 0.0, 1.0, 1), Error);
}

TEST(Sampled, MatchesClosedFormAndIsConsistent) {
  ProfileSolution sol;
  sol.u = linspace(0.2, 1.0, 801);
  for (double u : sol.u) {
    const ProfileValue p = t1x_profile(1, 2, 0, u);
    sol.value.push_back(p.value);
    sol.d1.push_back(p.d1);
    sol.d2.push_back(p.d2);
  }
  const Profile f = sampled_profile(sol);
  for (std::size_t i = 0; i < sol.size(); i += 37) {
    EXPECT_NEAR(f(sol.u[i]).value, sol.value[i], 1e-14);
    EXPECT_NEAR(f(sol.u[i]).d1, sol.d1[i], 1e-12);
  }
  for (double u : linspace(0.2013, 0.9871, 57)) {
    const ProfileValue a = f(u), b = t1x_profile(1, 2, 0, u);
    EXPECT_NEAR(a.value, b.value, 1e-10);
    EXPECT_NEAR(a.d1, b.d1, 1e-8);
    EXPECT_NEAR(a.d2, b.d2, 1e-5);
    const double h = 1e-4;
    EXPECT_NEAR((f(u + h).value - f(u - h).value) / (2 * h), a.d1, 1e-6);
  }
  EXPECT_THROW(f(1.01), DomainError);
  EXPECT_THROW(f(0.19), DomainError);
}

TEST(Sampled, NeedsTwoSamples) {
  ProfileSolution one;
  one.u = {0.0};
  one.value = one.d1 = one.d2 = {0.0};
  EXPECT_THROW(sampled_profile(one), Error);
}
