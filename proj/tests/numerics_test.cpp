#include "helix/numerics.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace helix {
namespace {

using numerics::linspace;

TEST(Linspace, EndpointsAreExact) {
  const auto s = linspace(0.1, 6.18, 997);
  ASSERT_EQ(s.size(), 997u);
  EXPECT_EQ(s.front(), 0.1);
  EXPECT_EQ(s.back(), 6.18);
  EXPECT_TRUE(numerics::is_uniform(s));
}

TEST(Diff, ExactOnQuartics) {
  // Every stencil, central or one-sided, is exact for degree <= 4.
  const auto s = linspace(-1.0, 2.0, 31);
  std::vector<double> v, dv;
  for (double x : s) {
    v.push_back(3 * x * x * x * x - x * x * x + 2 * x - 5);
    dv.push_back(12 * x * x * x - 3 * x * x + 2);
  }
  const auto d = numerics::diff(s, v);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(d[i], dv[i], 1e-11) << i;
}

TEST(Diff, FourthOrderOnSmoothData) {
  double prev = 0.0;
  for (std::size_t n : {51u, 101u, 201u}) {
    const auto s = linspace(0.0, 2.0, n);
    std::vector<double> v;
    for (double x : s) v.push_back(std::sin(3 * x));
    const auto d = numerics::diff(s, v);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(d[i] - 3 * std::cos(3 * s[i])));
    if (prev > 0) {
      EXPECT_GT(prev / err, 12.0);  // ~16 for 4th order
    }
    prev = err;
  }
}

TEST(Diff, EdgeTrimAndShortRuns) {
  const auto s = linspace(0.0, 1.0, 11);
  std::vector<double> v(s.begin(), s.end());
  const auto d = numerics::diff(s, v, numerics::kOneSidedEdge);
  EXPECT_TRUE(std::isnan(d[0]));
  EXPECT_TRUE(std::isnan(d[1]));
  EXPECT_NEAR(d[2], 1.0, 1e-13);
  EXPECT_TRUE(std::isnan(d[10]));

  const std::vector<double> short_s = {0.0, 0.1, 0.2};
  const auto ds = numerics::diff(short_s, short_s);
  for (double x : ds) EXPECT_TRUE(std::isnan(x));
}

TEST(Diff, RunsAcrossGapsAreIndependent) {
  std::vector<double> s;
  for (int i = 0; i < 10; ++i) s.push_back(0.1 * i);
  for (int i = 20; i < 30; ++i) s.push_back(0.1 * i);
  std::vector<double> v;
  for (double x : s) v.push_back(x * x);
  const auto d = numerics::diff(s, v);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(d[i], 2 * s[i], 1e-12);
}

TEST(DiffNonuniform, ExactOnQuarticsOnStretchedGrid) {
  std::vector<double> s;
  for (double u : linspace(0.0, 1.0, 40)) s.push_back(u + 0.3 * u * u);
  std::vector<double> v, dv;
  for (double x : s) {
    v.push_back(x * x * x * x - 2 * x);
    dv.push_back(4 * x * x * x - 2);
  }
  const auto d = numerics::diff_nonuniform(s, v);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(d[i], dv[i], 1e-9) << i;
}

TEST(DiffNonuniform, MatchesUniformStencils) {
  const auto s = linspace(0.0, 1.0, 25);
  std::vector<double> v;
  for (double x : s) v.push_back(std::exp(x));
  const auto a = numerics::diff(s, v);
  const auto b = numerics::diff_nonuniform(s, v);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-11);
}

TEST(CumulativeIntegral, ExactOnCubics) {
  for (std::size_t n : {9u, 10u}) {  // even and odd sample counts
    const auto s = linspace(0.0, 2.0, n);
    std::vector<double> v;
    for (double x : s) v.push_back(x * x * x - x);
    const auto I = numerics::cumulative_integral(s, v);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = s[i];
      EXPECT_NEAR(I[i], x * x * x * x / 4 - x * x / 2, 1e-12) << "n=" << n << " i=" << i;
    }
  }
}

TEST(CumulativeIntegral, VectorValued) {
  const auto s = linspace(0.0, std::acos(-1.0), 2001);
  std::vector<Vec3> v;
  for (double x : s) v.emplace_back(std::cos(x), std::sin(x), 1.0);
  const auto I = numerics::cumulative_integral(s, v);
  EXPECT_NEAR(I.back().x(), 0.0, 1e-12);
  EXPECT_NEAR(I.back().y(), 2.0, 1e-12);
  EXPECT_NEAR(I.back().z(), std::acos(-1.0), 1e-12);
}

TEST(Spline, InterpolatesKnotsAndLines) {
  const std::vector<double> x = {0.0, 0.5, 1.5, 2.0, 3.5};
  std::vector<double> y;
  for (double t : x) y.push_back(2 * t - 1);
  numerics::NaturalCubicSpline<double> sp(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(sp(x[i]), y[i]);
  for (double t : linspace(0.0, 3.5, 50)) EXPECT_NEAR(sp(t), 2 * t - 1, 1e-13);
}

TEST(Spline, AccurateOnSmoothFunctionInterior) {
  const auto x = linspace(0.0, 6.0, 121);
  std::vector<double> y;
  for (double t : x) y.push_back(std::sin(t));
  numerics::NaturalCubicSpline<double> sp(x, y);
  for (double t : linspace(1.0, 5.0, 333)) EXPECT_NEAR(sp(t), std::sin(t), 1e-6);
}

TEST(MeanStd, Basic) {
  const std::vector<double> v = {1.0, 2.0, 3.0, 4.0};
  const auto ms = numerics::mean_std(v);
  EXPECT_DOUBLE_EQ(ms.mean, 2.5);
  EXPECT_NEAR(ms.stddev, std::sqrt(1.25), 1e-15);
}

TEST(MatchIndices, JoinsSubsequence) {
  const std::vector<double> super = {0.0, 0.1, 0.2, 0.3, 0.4};
  const std::vector<double> sub = {0.1, 0.3, 0.4};
  const auto idx = numerics::match_indices(super, sub);
  EXPECT_EQ(idx, (std::vector<std::size_t>{1, 3, 4}));
  const std::vector<double> bad = {0.15};
  EXPECT_THROW(numerics::match_indices(super, bad), InvalidArgument);
}

}  // namespace
}  // namespace helix
