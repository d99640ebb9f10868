#pragma once

// Alternative moving frame {N, C, W}: C = N'/|N'|, W = N x C, with
//   N' = f C,  C' = -f N + g W,  W' = -g C,
// f = kappa sqrt(1 + H^2) and g = sigma f. D = g N + f W is the Darboux
// vector expressed in this frame.

#include "helix/errors.hpp"
#include "helix/frenet.hpp"
#include "helix/numerics.hpp"
#include "helix/types.hpp"

#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <span>
#include <vector>

namespace helix {

struct AltFrameData {
  std::vector<double> s;
  std::vector<Vec3> N, C, W;
  std::vector<double> f, g, sigma;
  std::vector<Vec3> D;
  double coverage = 1.0;

  std::size_t size() const { return s.size(); }
};

struct AxisEstimate {
  Vec3 u = Vec3::UnitZ();
  double cos_angle_mean = 0.0;
  double residual = 0.0;
};

inline constexpr double kRelativeFMin = 1e-8;

inline AltFrameData alt_frame_from_frenet(const FrenetApparatus& app) {
  const SigmaProfile sig = sigma_from_apparatus(app);
  const auto idx = numerics::match_indices(app.s, sig.s);

  double f_max = 0.0;
  std::vector<double> f_all(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const std::size_t i = idx[k];
    f_all[k] = std::hypot(app.kappa[i], app.tau[i]);
    f_max = std::max(f_max, f_all[k]);
  }

  AltFrameData alt;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const double f = f_all[k];
    if (!(f >= kRelativeFMin * f_max) || f == 0.0) continue;
    const std::size_t i = idx[k];
    const Vec3 C = (-app.kappa[i] * app.T[i] + app.tau[i] * app.B[i]) / f;
    const Vec3 W = app.N[i].cross(C);
    const double g = sig.sigma[k] * f;
    alt.s.push_back(app.s[i]);
    alt.N.push_back(app.N[i]);
    alt.C.push_back(C);
    alt.W.push_back(W);
    alt.f.push_back(f);
    alt.g.push_back(g);
    alt.sigma.push_back(sig.sigma[k]);
    alt.D.push_back(g * app.N[i] + f * W);
  }
  if (alt.size() == 0) {
    throw DegenerateCurve("|N'| vanishes on every sample; alternative frame undefined");
  }
  alt.coverage = sig.coverage * static_cast<double>(alt.size()) / static_cast<double>(idx.size());
  return alt;
}

struct AltOdeResidual {
  // Index 0: N' - f C, 1: C' + f N - g W, 2: W' + g C.
  std::array<double, 3> max{};
  std::array<double, 3> mean{};
};

inline AltOdeResidual verify_alt_ode(const AltFrameData& alt) {
  if (alt.size() < numerics::kStencilWidth) {
    throw InsufficientData("verify_alt_ode needs at least 5 samples");
  }
  const auto dN = numerics::diff(alt.s, alt.N, numerics::kOneSidedEdge);
  const auto dC = numerics::diff(alt.s, alt.C, numerics::kOneSidedEdge);
  const auto dW = numerics::diff(alt.s, alt.W, numerics::kOneSidedEdge);
  AltOdeResidual r;
  std::size_t used = 0;
  for (std::size_t i = 0; i < alt.size(); ++i) {
    if (!dN[i].allFinite()) continue;
    const double f = alt.f[i];
    const double g = alt.g[i];
    const std::array<double, 3> e = {
        (dN[i] - f * alt.C[i]).norm(),
        (dC[i] + f * alt.N[i] - g * alt.W[i]).norm(),
        (dW[i] + g * alt.C[i]).norm(),
    };
    for (int k = 0; k < 3; ++k) {
      r.max[k] = std::max(r.max[k], e[k]);
      r.mean[k] += e[k];
    }
    ++used;
  }
  if (used > 0) {
    for (double& m : r.mean) m /= static_cast<double>(used);
  }
  return r;
}

struct AxisField {
  std::vector<double> s;
  std::vector<Vec3> u;
  // |u| before normalization; 1 when phi matches the curve.
  std::vector<double> raw_norm;
};

// |(g/f)'| below this counts as zero.
inline bool sigma_derivative_vanishes(double dsigma, double sigma) {
  return std::abs(dsigma) < 1e-10 * (1.0 + std::abs(sigma));
}

/// Axis of a C-slant helix evaluated pointwise:
///   u = [ g(f^2+g^2)/(f^2 (g/f)') N + C + (f^2+g^2)/(f (g/f)') W ] cos(phi),
/// then normalized. On a true C-slant helix every u(s) is the same vector.
inline AxisField c_slant_axis(const AltFrameData& alt, double phi) {
  if (alt.size() < numerics::kStencilWidth) throw InsufficientData("c_slant_axis needs 5 samples");
  const auto dsigma = numerics::diff(alt.s, alt.sigma, numerics::kOneSidedEdge);
  AxisField out;
  for (std::size_t i = 0; i < alt.size(); ++i) {
    if (!std::isfinite(dsigma[i])) continue;
    if (sigma_derivative_vanishes(dsigma[i], alt.sigma[i])) {
      throw DegenerateAxis("(g/f)' vanishes at s = " + std::to_string(alt.s[i]) +
                           " (slant helix point); axis undefined");
    }
    const double f = alt.f[i];
    const double g = alt.g[i];
    const double w2 = f * f + g * g;
    const Vec3 raw = (g * w2 / (f * f * dsigma[i]) * alt.N[i] + alt.C[i] +
                      w2 / (f * dsigma[i]) * alt.W[i]) *
                     std::cos(phi);
    const double norm = raw.norm();
    out.s.push_back(alt.s[i]);
    out.u.push_back(raw / norm);
    out.raw_norm.push_back(norm);
  }
  return out;
}

/// Unit vector u minimizing the variance of <field_i, u>: the eigenvector of
/// the smallest eigenvalue of the field's covariance. A field that is
/// constant up to round-off yields its mean direction.
inline AxisEstimate estimate_fixed_axis(std::span<const Vec3> field) {
  if (field.size() < 3) throw InvalidArgument("estimate_fixed_axis needs at least 3 samples");
  Vec3 mean = Vec3::Zero();
  for (const auto& v : field) mean += v;
  mean /= static_cast<double>(field.size());
  Mat3 cov = Mat3::Zero();
  for (const auto& v : field) {
    const Vec3 d = v - mean;
    cov += d * d.transpose();
  }
  cov /= static_cast<double>(field.size());

  AxisEstimate est;
  Eigen::SelfAdjointEigenSolver<Mat3> eig(cov);
  if (eig.eigenvalues()(2) <= 1e-24 && mean.norm() > 0) {
    est.u = mean.normalized();
  } else {
    est.u = eig.eigenvectors().col(0).normalized();
  }
  if (est.u.dot(mean) < 0) est.u = -est.u;

  std::vector<double> dots;
  dots.reserve(field.size());
  for (const auto& v : field) dots.push_back(v.dot(est.u));
  const auto ms = numerics::mean_std(dots);
  est.cos_angle_mean = ms.mean;
  est.residual = ms.stddev;
  return est;
}

inline AxisEstimate estimate_fixed_axis(const std::vector<Vec3>& field) {
  return estimate_fixed_axis(std::span<const Vec3>(field));
}

}  // namespace helix
