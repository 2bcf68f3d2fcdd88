#include <gtest/gtest.h>

#include <cmath>

#include "lmifeas/stepsize.hpp"

using namespace lmifeas;

TEST(Stepsizes, Examples) {
  const auto h1 = stepsizes(StepsizePolicy::harmonic(), 1);
  EXPECT_EQ(h1.alpha, 1.0);
  EXPECT_EQ(h1.Gamma, 1.0);
  const auto h3 = stepsizes(StepsizePolicy::harmonic(), 3);
  EXPECT_DOUBLE_EQ(h3.alpha, 0.5);
  EXPECT_DOUBLE_EQ(h3.Gamma, 1.0 / 6.0);
  const auto r1 = stepsizes(StepsizePolicy::recursive(), 1);
  EXPECT_EQ(r1.alpha, 1.0);
  EXPECT_EQ(r1.Gamma, 1.0);
  const auto r2 = stepsizes(StepsizePolicy::recursive(), 2);
  EXPECT_NEAR(r2.alpha, (std::sqrt(5.0) - 1.0) / 2.0, 1e-15);
  EXPECT_NEAR(r2.Gamma, r2.alpha * r2.alpha, 1e-15);
  EXPECT_THROW(stepsizes(StepsizePolicy::harmonic(), 0), InvalidParameter);
}

TEST(Stepsizes, PolicyConstants) {
  const auto h = StepsizePolicy::harmonic();
  EXPECT_EQ(h.C1, 2.0);
  EXPECT_EQ(h.C2, 2.0);
  EXPECT_DOUBLE_EQ(h.C3, 2.0 / std::sqrt(3.0));
  const auto r = StepsizePolicy::recursive();
  EXPECT_EQ(r.C1, 1.0);
  EXPECT_EQ(r.C2, 4.0);
  EXPECT_DOUBLE_EQ(r.C3, 4.0 / std::sqrt(3.0));
}

TEST(Stepsizes, HarmonicClosedForm) {
  StepsizeSchedule s(StepsizePolicy::harmonic());
  for (std::size_t t = 1; t <= 2000; ++t) {
    const auto v = s.next();
    const double td = static_cast<double>(t);
    EXPECT_NEAR(v.alpha, 2.0 / (td + 1.0), 1e-15);
    EXPECT_NEAR(v.Gamma, 2.0 / (td * (td + 1.0)), 1e-12 * v.Gamma);
  }
}

TEST(Stepsizes, RecursiveIdentity) {
  StepsizeSchedule s(StepsizePolicy::recursive());
  double prev = s.next().Gamma;
  for (std::size_t t = 2; t <= 2000; ++t) {
    const auto v = s.next();
    EXPECT_NEAR(v.alpha * v.alpha, (1.0 - v.alpha) * prev, 1e-15);
    EXPECT_NEAR(v.Gamma, v.alpha * v.alpha, 1e-15);
    prev = v.Gamma;
  }
}

TEST(Stepsizes, ConstantBoundsBothPolicies) {
  for (auto pol : {StepsizePolicy::harmonic(), StepsizePolicy::recursive()}) {
    StepsizeSchedule s(pol);
    double sum = 0.0;
    for (std::size_t t = 1; t <= 10000; ++t) {
      const auto v = s.next();
      const double td = static_cast<double>(t);
      if (t == 1) {
        EXPECT_EQ(v.alpha, 1.0);
      }
      ASSERT_GT(v.alpha, 0.0);
      ASSERT_LE(v.alpha, 1.0);
      ASSERT_LE(v.alpha * v.alpha / v.Gamma, pol.C1 + 1e-9);
      ASSERT_LE(v.Gamma, pol.C2 / (td * td) + 1e-9);
      sum += (v.alpha / v.Gamma) * (v.alpha / v.Gamma);
      ASSERT_LE(v.Gamma * std::sqrt(sum), pol.C3 / std::sqrt(td) + 1e-9) << "t=" << t;
    }
  }
}

TEST(Stepsizes, ScheduleMatchesDirectQuery) {
  StepsizeSchedule s(StepsizePolicy::recursive());
  for (std::size_t t = 1; t <= 50; ++t) {
    const auto a = s.next();
    const auto b = stepsizes(StepsizePolicy::recursive(), t);
    EXPECT_EQ(a.alpha, b.alpha);
    EXPECT_EQ(a.Gamma, b.Gamma);
  }
}
