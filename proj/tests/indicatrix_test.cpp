#include "helix/indicatrix.hpp"
#include "helix/verify.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace helix {
namespace {

constexpr double pi = std::numbers::pi;

struct Base {
  FrenetApparatus app;
  AltFrameData alt;
};

Base analytic(const IntrinsicProfile& p, Interval span, double h = 1e-3) {
  Base b;
  b.app = synthesize_curve(p, span, h).apparatus;
  b.alt = alt_frame_from_frenet(b.app);
  return b;
}

// Curvature and torsion of the indicatrix measured straight from its points,
// compared with the closed forms in the intrinsics.
void expect_intrinsics_match_points(const Indicatrix& ind, double tol) {
  const CurveSamples pts{ind.curve.t, ind.curve.gamma};
  const auto measured = frenet_from_samples(resample_arclength(pts, 1500));
  numerics::NaturalCubicSpline<double> k(ind.curve.t, ind.intrinsics.kappa);
  numerics::NaturalCubicSpline<double> t(ind.curve.t, ind.intrinsics.tau);
  const double lo = ind.curve.t.front() + 0.05 * (ind.curve.t.back() - ind.curve.t.front());
  const double hi = ind.curve.t.back() - 0.05 * (ind.curve.t.back() - ind.curve.t.front());
  std::size_t checked = 0;
  for (std::size_t i = 0; i < measured.size(); ++i) {
    const double s = measured.s[i];
    if (s < lo || s > hi) continue;
    ASSERT_NEAR(measured.kappa[i], k(s), tol * std::max(1.0, std::abs(k(s)))) << "s_ind=" << s;
    ASSERT_NEAR(measured.tau[i], t(s), tol * std::max(1.0, std::abs(t(s)))) << "s_ind=" << s;
    ++checked;
  }
  EXPECT_GT(checked, 100u);
}

TEST(Tangent, CircularHelixIsSmallCircle) {
  const auto b = analytic(IntrinsicProfile::circular_helix(1.0, 1.0), {0.0, 10.0});
  const auto ind = tangent_indicatrix(b.app, b.alt);
  EXPECT_LT(test::max_abs_diff(ind.intrinsics.kappa, std::sqrt(2.0)), 1e-12);
  EXPECT_LT(test::max_abs_diff(ind.intrinsics.tau, 0.0), 1e-12);
  for (const auto& g : ind.curve.gamma) ASSERT_NEAR(g.norm(), 1.0, 1e-13);
  // s_T = integral of kappa.
  EXPECT_NEAR(ind.curve.t.back() - ind.curve.t.front(), 0.5 * (b.alt.s.back() - b.alt.s.front()),
              1e-10);
}

TEST(Tangent, IntrinsicsMatchPoints) {
  const auto b = analytic(IntrinsicProfile::c_constant_precession(1.0, 1.0, 1.0), {-2.2, 0.6});
  expect_intrinsics_match_points(tangent_indicatrix(b.app, b.alt), 1e-4);
}

TEST(Normal, IntrinsicsMatchPoints) {
  const auto b = analytic(IntrinsicProfile::c_constant_precession(1.0, 1.0, 1.0), {-2.2, 0.6});
  expect_intrinsics_match_points(normal_indicatrix(b.app, b.alt), 1e-4);
}

TEST(Binormal, IntrinsicsMatchPoints) {
  const auto b = analytic(IntrinsicProfile::constant_precession(1.0, 0.5), {0.3, 2.8});
  const auto pieces = binormal_indicatrix(b.app, b.alt);
  ASSERT_EQ(pieces.size(), 1u);
  expect_intrinsics_match_points(pieces[0], 1e-4);
}

TEST(Binormal, SplitsWhereTorsionChangesSign) {
  const auto s = numerics::linspace(0.2, 6.0, 5801);
  std::vector<double> k(s.size(), 1.0), t;
  for (double x : s) t.push_back(std::sin(x));
  const auto b = analytic(IntrinsicProfile::tabulated(s, k, t), {0.2, 6.0});
  const auto pieces = binormal_indicatrix(b.app, b.alt);
  ASSERT_EQ(pieces.size(), 2u);
  EXPECT_LT(pieces[0].intrinsics.s_base.back(), pi);
  EXPECT_GT(pieces[1].intrinsics.s_base.front(), pi);
  for (const auto& piece : pieces) {
    const auto& sb = piece.intrinsics.s_ind;
    for (std::size_t i = 1; i < sb.size(); ++i) ASSERT_GT(sb[i], sb[i - 1]);
  }
}

TEST(Binormal, PlaneCurveIsDegenerate) {
  const auto app = frenet_from_samples(test::sample_circle(600));
  const auto alt = alt_frame_from_frenet(app);
  EXPECT_THROW(binormal_indicatrix(app, alt), DegenerateCurve);
}

TEST(IndicatrixSigma, TangentOfHelixIsZero) {
  const auto b = analytic(IntrinsicProfile::circular_helix(2.0, 1.0), {0.0, 10.0});
  const auto sig = indicatrix_sigma(tangent_indicatrix(b.app, b.alt));
  EXPECT_LT(test::max_abs_diff(sig.sigma, 0.0), 1e-12);
}

TEST(IndicatrixSigma, MatchesNumericOnIndicatrixPoints) {
  // Away from the domain ends, where kappa -> 0 and the indicatrix speeds up.
  const auto b = analytic(IntrinsicProfile::c_constant_precession(0.0, 1.0, 2.0), {-0.5, 0.5});
  const auto ind = tangent_indicatrix(b.app, b.alt);
  const auto sig = indicatrix_sigma(ind);
  // sigma is a fourth derivative of the points; a finer grid drowns in round-off.
  const auto measured = sigma_from_apparatus(
      frenet_from_samples(resample_arclength({ind.curve.t, ind.curve.gamma}, 200)));
  numerics::NaturalCubicSpline<double> s_of_base(ind.intrinsics.s_base, ind.curve.t);
  numerics::NaturalCubicSpline<double> m(measured.s, measured.sigma);
  std::size_t checked = 0;
  for (std::size_t i = 0; i < sig.s.size(); ++i) {
    const double t = s_of_base(sig.s[i]);
    if (t < measured.s[10] || t > measured.s[measured.s.size() - 11]) continue;
    ASSERT_NEAR(sig.sigma[i], m(t), 1e-4 * std::max(1.0, std::abs(m(t))));
    ++checked;
  }
  EXPECT_GT(checked, 50u);
}

TEST(Sabban, SmallCircleGeodesicCurvature) {
  for (double colat : {0.3, pi / 4, 1.2}) {
    const auto f = sabban_frame(spherical_circle(colat, 1.0, 2000));
    for (std::size_t i = 0; i < f.t.size(); ++i) {
      ASSERT_NEAR(f.Y[i].norm(), 1.0, 1e-9);
      ASSERT_NEAR(f.gamma[i].dot(f.T[i]), 0.0, 1e-9);
      if (std::isfinite(f.k_g[i])) {
        ASSERT_NEAR(f.k_g[i], 1.0 / std::tan(colat), 1e-6);
      }
    }
  }
}

TEST(Sabban, NormalIndicatrixGeodesicCurvatureIsSigma) {
  const auto b = analytic(IntrinsicProfile::constant_precession(1.0, 0.5), {0.3, 2 * pi - 0.3});
  EXPECT_LT(detail::geodesic_curvature_error(b.app, b.alt), 1e-4);
  const auto c = analytic(IntrinsicProfile::c_constant_precession(1.0, 1.0, 1.0), {-2.2, 0.6});
  EXPECT_LT(detail::geodesic_curvature_error(c.app, c.alt), 1e-3);
}

TEST(Sabban, RejectsBadInput) {
  auto sc = spherical_circle(pi / 3, 1.0, 500);
  for (double& t : sc.t) t *= 2.0;
  EXPECT_THROW(sabban_frame(sc), ReparameterizeFirst);
  auto off = spherical_circle(pi / 3, 1.0, 500);
  off.gamma[7] *= 1.01;
  EXPECT_THROW(sabban_frame(off), MalformedInput);
}

TEST(IntegrateY, GreatCircleGivesStraightLine) {
  const auto beta = integrate_Y(spherical_circle(pi / 2, 1.0, 1000));
  EXPECT_EQ(beta.p.front(), Vec3::Zero());
  for (std::size_t i = 0; i < beta.size(); ++i) {
    ASSERT_LT((beta.p[i] - Vec3(0, 0, beta.s[i])).norm(), 1e-8);
  }
}

TEST(ResampleSpherical, StaysOnSphere) {
  const auto b = analytic(IntrinsicProfile::constant_precession(1.0, 0.5), {0.3, 3.0});
  const auto ind = normal_indicatrix(b.app, b.alt);
  const auto r = resample_spherical(ind.curve, 300);
  ASSERT_EQ(r.size(), 300u);
  for (const auto& g : r.gamma) ASSERT_NEAR(g.norm(), 1.0, 1e-15);
  EXPECT_TRUE(numerics::is_uniform(r.t));
}

// Property: every indicatrix point is a unit vector and the frames are
// right-handed, for random tabulated curves.
TEST(Property, FramesOrthonormal) {
  test::Rng rng(41);
  for (int trial = 0; trial < 8; ++trial) {
    const double a = rng.uniform(0.5, 2.0), b = rng.uniform(0.2, 2.0), c = rng.uniform(0.5, 3.0);
    const auto s = numerics::linspace(0.0, 3.0, 3001);
    std::vector<double> k, t;
    for (double x : s) {
      k.push_back(a + 0.3 * std::sin(c * x));
      t.push_back(b + 0.2 * std::cos(x));
    }
    const auto base = analytic(IntrinsicProfile::tabulated(s, k, t), {0.0, 3.0});
    std::vector<Indicatrix> all = {tangent_indicatrix(base.app, base.alt),
                                   normal_indicatrix(base.app, base.alt)};
    for (auto& p : binormal_indicatrix(base.app, base.alt)) all.push_back(std::move(p));
    for (const auto& ind : all) {
      for (std::size_t i = 0; i < ind.curve.size(); ++i) {
        ASSERT_NEAR(ind.curve.gamma[i].norm(), 1.0, 1e-12);
        ASSERT_NEAR(ind.frames.T[i].cross(ind.frames.N[i]).dot(ind.frames.B[i]), 1.0, 1e-12)
            << to_string(ind.intrinsics.which);
        ASSERT_NEAR(ind.frames.T[i].dot(ind.curve.gamma[i]), 0.0, 1e-12);
      }
    }
  }
}

}  // namespace
}  // namespace helix
