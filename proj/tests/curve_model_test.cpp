#include "helix/curve_model.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace helix {
namespace {

constexpr double pi = std::numbers::pi;

TEST(UnitSpeed, CircleByAngleIsUnitSpeed) {
  const auto c = test::sample_circle(1000);
  const auto r = validate_unit_speed(c, kDefaultSpeedTolerance);
  EXPECT_TRUE(r.pass);
  EXPECT_LT(r.worst_relative_deviation, 1e-5);
}

TEST(UnitSpeed, CircleAtDoubleRateFails) {
  auto c = test::sample_circle(1000);
  for (double& s : c.s) s *= 2.0;
  const auto r = validate_unit_speed(c, kDefaultSpeedTolerance);
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.worst_relative_deviation, 0.5, 1e-5);
}

TEST(UnitSpeed, HelixByAngleFails) {
  // (cos t, sin t, t) has speed sqrt(2).
  CurveSamples c;
  for (double t : numerics::linspace(0.0, 10.0, 500)) {
    c.s.push_back(t);
    c.p.emplace_back(std::cos(t), std::sin(t), t);
  }
  const auto r = validate_unit_speed(c, kDefaultSpeedTolerance);
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.worst_relative_deviation, std::sqrt(2.0) - 1.0, 1e-4);
}

TEST(UnitSpeed, TooFewSamples) {
  CurveSamples c{{0.0}, {Vec3::Zero()}};
  EXPECT_THROW(validate_unit_speed(c, 1e-3), MalformedInput);
}

TEST(Resample, StraightSegmentIsExact) {
  CurveSamples c;
  for (double s : numerics::linspace(0.0, 9.0, 10)) {
    c.s.push_back(s);
    c.p.push_back(Vec3(1, 2, 2) / 3.0 * s);
  }
  const auto r = resample_arclength(c, 5);
  ASSERT_EQ(r.size(), 5u);
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_NEAR((r.p[i] - Vec3(1, 2, 2) / 3.0 * r.s[i]).norm(), 0.0, 1e-13);
  }
}

TEST(Resample, CircleMatchesAnalytic) {
  const auto c = test::sample_circle(1000);
  const auto r = resample_arclength(c, 500);
  double err = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    err = std::max(err, (r.p[i] - test::helix_point(1.0, 0.0, r.s[i])).norm());
  }
  EXPECT_LT(err, 1e-6);
  EXPECT_EQ(r.p.front(), c.p.front());
  EXPECT_EQ(r.p.back(), c.p.back());
}

TEST(Resample, RejectsTinyCounts) {
  EXPECT_THROW(resample_arclength(test::sample_circle(100), 4), InvalidArgument);
}

TEST(Resample, IdempotentOnUniformInput) {
  test::Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = rng.uniform(0.5, 3.0);
    const double b = rng.uniform(-2.0, 2.0);
    const auto n = static_cast<std::size_t>(rng.uniform(50, 400));
    const auto once = resample_arclength(test::sample_helix(a, b, 0.0, 5.0, 300), n);
    const auto twice = resample_arclength(once, n);
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_LT((once.p[i] - twice.p[i]).norm(), 1e-12) << "trial " << trial;
    }
  }
}

TEST(Profile, ConstantPrecessionValues) {
  const auto p = IntrinsicProfile::constant_precession(1.0, 0.5);
  const auto kt = eval_profile(p, pi);
  EXPECT_NEAR(kt.kappa, 1.0, 1e-15);
  EXPECT_NEAR(kt.tau, 0.0, 1e-15);
  EXPECT_EQ(p.domain().lo, 0.0);
  EXPECT_NEAR(p.domain().hi, 2 * pi, 1e-15);
  EXPECT_THROW(eval_profile(p, 0.0), DomainError);
  EXPECT_THROW(eval_profile(p, 7.0), DomainError);
}

TEST(Profile, CircularHelixValues) {
  const auto circle = eval_profile(IntrinsicProfile::circular_helix(1.0, 0.0), 123.0);
  EXPECT_EQ(circle.kappa, 1.0);
  EXPECT_EQ(circle.tau, 0.0);
  const auto h = eval_profile(IntrinsicProfile::circular_helix(3.0, 4.0), -5.0);
  EXPECT_DOUBLE_EQ(h.kappa, 3.0 / 25.0);
  EXPECT_DOUBLE_EQ(h.tau, 4.0 / 25.0);
}

TEST(Profile, InvalidParameters) {
  EXPECT_THROW(IntrinsicProfile::constant_precession(-1.0, 0.5), InvalidArgument);
  EXPECT_THROW(IntrinsicProfile::constant_precession(1.0, 0.0), InvalidArgument);
  EXPECT_THROW(IntrinsicProfile::circular_helix(0.0, 1.0), InvalidArgument);
  EXPECT_THROW(IntrinsicProfile::c_constant_precession(0.0, 0.0, 1.0), InvalidArgument);
  EXPECT_THROW(IntrinsicProfile::c_constant_precession(1.0, 1.0, 0.0), InvalidArgument);
}

TEST(Profile, CConstantPrecessionDomains) {
  const auto d1 = IntrinsicProfile::c_constant_precession(0, 1, 2).domain();
  EXPECT_NEAR(d1.lo, -pi / 4, 1e-14);
  EXPECT_NEAR(d1.hi, pi / 4, 1e-14);
  const auto d2 = IntrinsicProfile::c_constant_precession(1, 1, 1).domain();
  EXPECT_NEAR(d2.lo, -3 * pi / 4, 1e-14);
  EXPECT_NEAR(d2.hi, pi / 4, 1e-14);
  const auto d3 = IntrinsicProfile::c_constant_precession(1, 0, 0.5).domain();
  EXPECT_NEAR(d3.lo, -2 * pi, 1e-14);
  EXPECT_NEAR(d3.hi, 0.0, 1e-14);
}

TEST(Profile, CConstantPrecessionIsPositiveInsideDomain) {
  test::Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const double c1 = rng.uniform(-2, 2);
    const double c2 = rng.uniform(-2, 2);
    const double mu = rng.uniform(0.3, 3);
    const auto p = IntrinsicProfile::c_constant_precession(c1, c2, mu);
    const auto d = p.domain();
    for (double s : numerics::linspace(d.lo, d.hi, 201)) {
      if (!p.contains(s)) continue;
      const auto kt = p.eval(s);
      ASSERT_GT(kt.kappa, 0.0) << c1 << " " << c2 << " " << mu << " s=" << s;
      const double f = c2 * std::cos(mu * s) - c1 * std::sin(mu * s);
      ASSERT_NEAR(std::hypot(kt.kappa, kt.tau), f, 1e-12);
    }
  }
}

TEST(Profile, NegativeMuHasNoDomainAtDefaultTheta0) {
  // theta = pi/2 - f/mu > pi/2 wherever f > 0, so kappa < 0 throughout.
  EXPECT_THROW(IntrinsicProfile::c_constant_precession(1.0, 1.0, -1.0), InvalidArgument);
  EXPECT_NO_THROW(IntrinsicProfile::c_constant_precession(1.0, 1.0, -1.0, -std::numbers::pi / 2));
}

TEST(Profile, TabulatedExactAtKnots) {
  const std::vector<double> s = {0.0, 0.3, 1.0, 1.7};
  const std::vector<double> k = {1.0, 2.0, 0.5, 0.7};
  const std::vector<double> t = {0.1, -0.2, 0.3, 0.0};
  const auto p = IntrinsicProfile::tabulated(s, k, t);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(p.eval(s[i]).kappa, k[i]);
    EXPECT_EQ(p.eval(s[i]).tau, t[i]);
  }
  EXPECT_NEAR(p.eval(0.15).kappa, 1.5, 1e-15);
  EXPECT_THROW(p.eval(1.8), DomainError);
  EXPECT_THROW(IntrinsicProfile::tabulated({0, 1}, {1, -1}, {0, 0}), InvalidArgument);
  EXPECT_THROW(IntrinsicProfile::tabulated({0, 0}, {1, 1}, {0, 0}), MalformedInput);
}

TEST(Subsample, KeepsUniformGrid) {
  const auto c = test::sample_circle(1001);
  const auto s = subsample(c, 10);
  EXPECT_EQ(s.size(), 101u);
  EXPECT_TRUE(numerics::is_uniform(s.s));
  EXPECT_EQ(s.p.back(), c.p.back());
  EXPECT_EQ(decimate_to_spacing(c, 1e-2).size(), c.size());  // already ~6e-3 apart
}

}  // namespace
}  // namespace helix
