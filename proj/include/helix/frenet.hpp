#pragma once

#include "helix/curve_model.hpp"
#include "helix/errors.hpp"
#include "helix/numerics.hpp"
#include "helix/types.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace helix {

/// Per-sample Frenet frame and scalar curvatures. Samples where the frame is
/// undefined have been removed; `coverage` is the retained fraction.
struct FrenetApparatus {
  std::vector<double> s;
  std::vector<Vec3> T, N, B;
  std::vector<double> kappa, tau, H;
  double coverage = 1.0;

  std::size_t size() const { return s.size(); }
};

struct SigmaProfile {
  std::vector<double> s;
  std::vector<double> sigma;
  double coverage = 1.0;
};

// Below kRelativeKappaMin * max(kappa) the principal normal is noise.
inline constexpr double kRelativeKappaMin = 1e-8;
// max(kappa) * length below this means the whole curve is a straight line.
inline constexpr double kStraightLineBound = 1e-6;

namespace detail {

template <class Vec>
Vec pick(const Vec& v, const std::vector<std::size_t>& idx) {
  Vec out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(v[i]);
  return out;
}

inline FrenetApparatus select(const FrenetApparatus& a, const std::vector<std::size_t>& idx) {
  FrenetApparatus out;
  out.s = pick(a.s, idx);
  out.T = pick(a.T, idx);
  out.N = pick(a.N, idx);
  out.B = pick(a.B, idx);
  out.kappa = pick(a.kappa, idx);
  out.tau = pick(a.tau, idx);
  out.H = pick(a.H, idx);
  out.coverage = a.size() == 0 ? 0.0
                               : a.coverage * static_cast<double>(idx.size()) /
                                     static_cast<double>(a.size());
  return out;
}

}  // namespace detail

/// Frenet apparatus of a sampled unit-speed curve by repeated 4th-order
/// differences: T = p', N = T'/|T'|, B = T x N, kappa = |T'|, tau = <N', B>.
/// Non-uniform input is first resampled to a uniform grid with the same count.
inline FrenetApparatus frenet_from_samples(const CurveSamples& input) {
  check_samples(input, 7);
  const CurveSamples curve =
      numerics::is_uniform(input.s) ? input : resample_arclength(input, input.size());
  const std::size_t n = curve.size();

  std::vector<Vec3> T = numerics::diff(curve.s, curve.p);
  for (auto& t : T) t.normalize();
  const std::vector<Vec3> dT = numerics::diff(curve.s, T, numerics::kOneSidedEdge);

  std::vector<double> kappa(n, 0.0);
  std::vector<Vec3> normal(n, Vec3::Zero());
  std::vector<bool> defined(n, false);
  double kappa_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!dT[i].allFinite()) continue;
    const Vec3 perp = dT[i] - dT[i].dot(T[i]) * T[i];
    kappa[i] = perp.norm();
    normal[i] = perp;
    defined[i] = true;
    kappa_max = std::max(kappa_max, kappa[i]);
  }
  const double length = curve.s.back() - curve.s.front();
  if (kappa_max * length < kStraightLineBound) {
    throw DegenerateCurve("curvature vanishes on every sample (straight line)", kappa_max);
  }

  std::vector<std::size_t> keep;
  const double kappa_min = kRelativeKappaMin * kappa_max;
  for (std::size_t i = 0; i < n; ++i) {
    if (defined[i] && kappa[i] >= kappa_min) keep.push_back(i);
  }

  FrenetApparatus app;
  app.s = detail::pick(curve.s, keep);
  app.T = detail::pick(T, keep);
  app.kappa = detail::pick(kappa, keep);
  for (std::size_t k = 0; k < keep.size(); ++k) {
    app.N.push_back(normal[keep[k]] / app.kappa[k]);
    app.B.push_back(app.T[k].cross(app.N[k]));
  }
  const std::vector<Vec3> dN = numerics::diff(app.s, app.N, numerics::kOneSidedEdge);
  app.tau.resize(keep.size());
  app.H.resize(keep.size());
  std::vector<std::size_t> finite;
  for (std::size_t k = 0; k < keep.size(); ++k) {
    app.tau[k] = dN[k].dot(app.B[k]);
    app.H[k] = app.tau[k] / app.kappa[k];
    if (std::isfinite(app.tau[k])) finite.push_back(k);
  }
  app.coverage = static_cast<double>(keep.size()) / static_cast<double>(n);
  app = detail::select(app, finite);
  if (app.size() == 0) {
    throw DegenerateCurve("Frenet frame undefined on every sample", kappa_max);
  }
  return app;
}

inline std::vector<double> harmonic_curvature(const FrenetApparatus& app) {
  std::vector<double> H(app.size());
  for (std::size_t i = 0; i < app.size(); ++i) H[i] = app.tau[i] / app.kappa[i];
  return H;
}

/// Angle theta = atan2(tau, kappa), unwrapped along each run. tan(theta) = H,
/// and theta' = H' / (1 + H^2) stays bounded where H blows up.
inline std::vector<double> frenet_angle(const FrenetApparatus& app) {
  std::vector<double> theta(app.size());
  for (std::size_t i = 0; i < app.size(); ++i) {
    theta[i] = std::atan2(app.tau[i], app.kappa[i]);
    if (i > 0) {
      const double jump = theta[i] - theta[i - 1];
      theta[i] -= 2.0 * std::numbers::pi * std::round(jump / (2.0 * std::numbers::pi));
    }
  }
  return theta;
}

/// sigma = kappa^2 / (kappa^2 + tau^2)^(3/2) * (tau/kappa)'. The derivative
/// of H is taken as (1 + H^2) theta', so sigma = theta' / sqrt(kappa^2 + tau^2).
inline SigmaProfile sigma_from_apparatus(const FrenetApparatus& app) {
  if (app.size() < numerics::kStencilWidth) {
    throw InsufficientData("sigma needs at least 5 retained samples, got " +
                           std::to_string(app.size()));
  }
  const std::vector<double> theta = frenet_angle(app);
  const std::vector<double> dtheta = numerics::diff(app.s, theta, numerics::kOneSidedEdge);
  SigmaProfile out;
  for (std::size_t i = 0; i < app.size(); ++i) {
    const double sigma = dtheta[i] / std::hypot(app.kappa[i], app.tau[i]);
    if (!std::isfinite(sigma)) continue;
    out.s.push_back(app.s[i]);
    out.sigma.push_back(sigma);
  }
  if (out.s.size() < numerics::kStencilWidth) {
    throw InsufficientData("sigma: fewer than 5 samples with a defined derivative");
  }
  out.coverage = app.coverage * static_cast<double>(out.s.size()) / static_cast<double>(app.size());
  return out;
}

struct FrenetIntegration {
  CurveSamples curve;
  FrenetApparatus apparatus;
  // Largest ||F F^T - I|| of a raw RK4 step before projection.
  double max_step_defect = 0.0;
  // Sum of pre-projection defects divided by the span length.
  double drift_per_length = 0.0;
};

namespace detail {

struct FrenetState {
  Vec3 p, T, N, B;
};

inline FrenetState frenet_rhs(const FrenetState& y, CurvatureTorsion kt) {
  return {y.T, kt.kappa * y.N, -kt.kappa * y.T + kt.tau * y.B, -kt.tau * y.N};
}

inline FrenetState axpy(const FrenetState& y, double a, const FrenetState& k) {
  return {y.p + a * k.p, y.T + a * k.T, y.N + a * k.N, y.B + a * k.B};
}

inline double orthonormality_defect(const Vec3& T, const Vec3& N, const Vec3& B) {
  Mat3 m;
  m.row(0) = T.transpose();
  m.row(1) = N.transpose();
  m.row(2) = B.transpose();
  return (m * m.transpose() - Mat3::Identity()).norm();
}

// Nearest rotation to the frame matrix (polar factor of its SVD).
inline void project_frame(Vec3& T, Vec3& N, Vec3& B) {
  Mat3 m;
  m.row(0) = T.transpose();
  m.row(1) = N.transpose();
  m.row(2) = B.transpose();
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 r = svd.matrixU() * svd.matrixV().transpose();
  T = r.row(0).transpose();
  N = r.row(1).transpose();
  B = r.row(2).transpose();
}

}  // namespace detail

/// Integrates T' = kappa N, N' = -kappa T + tau B, B' = -tau N, p' = T with
/// classical RK4 at a fixed step no larger than h that divides the span
/// evenly. The frame is projected back onto SO(3) after every step.
inline FrenetIntegration integrate_frenet(const IntrinsicProfile& profile, const Vec3& init_pos,
                                          const Frame& init_frame, double h, Interval span) {
  if (!(h > 0)) throw InvalidArgument("integrate_frenet: step must be positive");
  if (!(span.hi > span.lo)) throw InvalidArgument("integrate_frenet: empty span");
  {
    const double defect = detail::orthonormality_defect(init_frame.T, init_frame.N, init_frame.B);
    const double handed = init_frame.T.cross(init_frame.N).dot(init_frame.B);
    if (!(defect <= 1e-12) || handed < 0) {
      throw InvalidArgument("integrate_frenet: initial frame is not orthonormal right-handed");
    }
  }
  if (!profile.contains(span.lo) || !profile.contains(span.hi)) {
    throw DomainError("integrate_frenet: span [" + std::to_string(span.lo) + ", " +
                      std::to_string(span.hi) + "] leaves the profile domain");
  }

  const double length = span.length();
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(length / h - 1e-9)));
  const std::vector<double> grid = numerics::linspace(span.lo, span.hi, steps + 1);
  const double step = length / static_cast<double>(steps);

  FrenetIntegration out;
  auto& app = out.apparatus;
  out.curve.s = grid;
  app.s = grid;
  const std::size_t n = grid.size();
  out.curve.p.reserve(n);
  app.T.reserve(n);
  app.N.reserve(n);
  app.B.reserve(n);

  detail::FrenetState y{init_pos, init_frame.T, init_frame.N, init_frame.B};
  double defect_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const CurvatureTorsion kt = profile.eval(grid[i]);
    out.curve.p.push_back(y.p);
    app.T.push_back(y.T);
    app.N.push_back(y.N);
    app.B.push_back(y.B);
    app.kappa.push_back(kt.kappa);
    app.tau.push_back(kt.tau);
    app.H.push_back(kt.tau / kt.kappa);
    if (i + 1 == n) break;

    const double s0 = grid[i];
    const double s1 = grid[i + 1];
    const double sm = 0.5 * (s0 + s1);
    const CurvatureTorsion km = profile.eval(sm);
    const CurvatureTorsion k1v = profile.eval(s1);
    const auto k1 = detail::frenet_rhs(y, kt);
    const auto k2 = detail::frenet_rhs(detail::axpy(y, 0.5 * step, k1), km);
    const auto k3 = detail::frenet_rhs(detail::axpy(y, 0.5 * step, k2), km);
    const auto k4 = detail::frenet_rhs(detail::axpy(y, step, k3), k1v);
    const double c = step / 6.0;
    y.p += c * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
    y.T += c * (k1.T + 2.0 * k2.T + 2.0 * k3.T + k4.T);
    y.N += c * (k1.N + 2.0 * k2.N + 2.0 * k3.N + k4.N);
    y.B += c * (k1.B + 2.0 * k2.B + 2.0 * k3.B + k4.B);

    const double defect = detail::orthonormality_defect(y.T, y.N, y.B);
    out.max_step_defect = std::max(out.max_step_defect, defect);
    defect_sum += defect;
    detail::project_frame(y.T, y.N, y.B);
  }
  out.drift_per_length = defect_sum / length;
  return out;
}

/// Integration from the origin with the identity frame, the usual way to
/// turn a profile into a concrete curve.
inline FrenetIntegration synthesize_curve(const IntrinsicProfile& profile, Interval span,
                                          double h) {
  return integrate_frenet(profile, Vec3::Zero(), Frame{}, h, span);
}

}  // namespace helix
