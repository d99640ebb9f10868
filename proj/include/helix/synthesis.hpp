#pragma once

// Closed-form intrinsic profiles and the (f, g) -> (kappa, tau) conversion.
//
// With kappa = f cos(theta), tau = f sin(theta) the alternative-frame
// curvatures are |N'| = f and theta' = g, so prescribing f and g fixes the
// curve up to rigid motion and the integration constant theta0.

#include "helix/alt_frame.hpp"
#include "helix/curve_model.hpp"
#include "helix/errors.hpp"
#include "helix/frenet.hpp"
#include "helix/numerics.hpp"
#include "helix/types.hpp"

#include <Eigen/QR>

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace helix {

struct FgProfile {
  std::function<double(double)> f;
  std::function<double(double)> g;
  // Optional closed-form antiderivative of g; otherwise g is integrated
  // numerically on the sampling grid.
  std::function<double(double)> g_antiderivative;
  Interval domain;      // closed sampling interval
  double anchor = 0.0;  // theta(anchor) = theta0

  static FgProfile tabulated(std::vector<double> s, std::vector<double> f, std::vector<double> g) {
    if (s.size() != f.size() || s.size() != g.size() || s.size() < 2) {
      throw MalformedInput("fg profile: column lengths differ");
    }
    auto interp = [s](std::vector<double> v) {
      return [s, v = std::move(v)](double x) {
        auto it = std::upper_bound(s.begin(), s.end(), x);
        std::size_t i = static_cast<std::size_t>(it - s.begin());
        i = std::clamp<std::size_t>(i, 1, s.size() - 1) - 1;
        const double u = (x - s[i]) / (s[i + 1] - s[i]);
        return v[i] + u * (v[i + 1] - v[i]);
      };
    };
    FgProfile p;
    p.domain = {s.front(), s.back()};
    p.anchor = s.front();
    p.f = interp(std::move(f));
    p.g = interp(std::move(g));
    return p;
  }
};

/// f = c2 cos(mu s) - c1 sin(mu s), g = c1 cos(mu s) + c2 sin(mu s): the
/// general solution of g' = mu f, f' = -mu g.
inline FgProfile fg_c_constant_precession(double c1, double c2, double mu, Interval domain) {
  if (mu == 0 || !std::isfinite(mu)) throw InvalidArgument("fg profile needs mu != 0");
  FgProfile p;
  p.f = [=](double s) { return c2 * std::cos(mu * s) - c1 * std::sin(mu * s); };
  p.g = [=](double s) { return c1 * std::cos(mu * s) + c2 * std::sin(mu * s); };
  p.g_antiderivative = [=](double s) { return (c1 * std::sin(mu * s) - c2 * std::cos(mu * s)) / mu; };
  p.domain = domain;
  return p;
}

struct FgConversion {
  IntrinsicProfile profile;
  Interval domain;
  std::vector<std::string> notes;
};

/// kappa = f cos(theta), tau = f sin(theta), theta = theta0 + integral of g
/// from the anchor. Sampled every `spacing` (or finer, to divide the domain)
/// into a tabulated profile. Where theta leaves (-pi/2, pi/2) kappa would
/// change sign; the longest admissible stretch is kept and noted.
inline FgConversion fg_to_kappa_tau(const FgProfile& fg, double theta0, double spacing) {
  if (!(spacing > 0)) throw InvalidArgument("fg_to_kappa_tau: spacing must be positive");
  if (!(fg.domain.hi > fg.domain.lo)) throw InvalidArgument("fg_to_kappa_tau: empty domain");
  const auto n = static_cast<std::size_t>(std::ceil(fg.domain.length() / spacing - 1e-9)) + 1;
  const std::vector<double> s = numerics::linspace(fg.domain.lo, fg.domain.hi, std::max<std::size_t>(n, 2));

  std::vector<double> f(s.size());
  std::vector<double> g(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    f[i] = fg.f(s[i]);
    g[i] = fg.g(s[i]);
    if (!(f[i] > 0)) {
      throw InvalidArgument("fg_to_kappa_tau: f must be positive (s = " + std::to_string(s[i]) + ")");
    }
  }

  std::vector<double> theta(s.size());
  if (fg.g_antiderivative) {
    const double base = fg.g_antiderivative(fg.anchor);
    for (std::size_t i = 0; i < s.size(); ++i) theta[i] = theta0 + fg.g_antiderivative(s[i]) - base;
  } else {
    if (!fg.domain.contains_closed(fg.anchor)) {
      throw InvalidArgument("fg_to_kappa_tau: anchor must lie in the domain");
    }
    const auto integral = numerics::cumulative_integral(s, g);
    numerics::NaturalCubicSpline<double> at(s, integral);
    const double base = at(fg.anchor);
    for (std::size_t i = 0; i < s.size(); ++i) theta[i] = theta0 + integral[i] - base;
  }

  // Longest run with |theta| < pi/2.
  std::size_t best_b = 0, best_e = 0, b = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    const bool ok = i < s.size() && std::abs(theta[i]) < std::numbers::pi / 2;
    if (!ok) {
      if (i - b > best_e - best_b) {
        best_b = b;
        best_e = i;
      }
      b = i + 1;
    }
  }
  if (best_e - best_b < 2) {
    throw InvalidArgument("fg_to_kappa_tau: theta never stays inside (-pi/2, pi/2)");
  }

  std::vector<double> ks, kk, kt;
  for (std::size_t i = best_b; i < best_e; ++i) {
    ks.push_back(s[i]);
    kk.push_back(f[i] * std::cos(theta[i]));
    kt.push_back(f[i] * std::sin(theta[i]));
  }
  FgConversion out{IntrinsicProfile::tabulated(ks, kk, kt), {ks.front(), ks.back()}, {}};
  if (best_b != 0 || best_e != s.size()) {
    out.notes.push_back("domain shrunk to [" + std::to_string(ks.front()) + ", " +
                        std::to_string(ks.back()) + "]: kappa would cross zero");
  }
  return out;
}

inline IntrinsicProfile profile_c_constant_precession(double c1, double c2, double mu,
                                                      double theta0 = std::numbers::pi / 2) {
  return IntrinsicProfile::c_constant_precession(c1, c2, mu, theta0);
}

/// The closed form for C-constant precession as it is usually printed:
///   kappa = f / sqrt(mu^2 + tan^2(c1 sin mu s - c2 cos mu s)),
///   tau   = f (mu^2 - 1 + tan^2(...)) / sqrt(mu^2 + tan^2(...)).
/// It disagrees with kappa = f cos(theta), tau = f sin(theta) and is kept
/// only to quantify that disagreement.
inline CurvatureTorsion printed_c_precession_form(double c1, double c2, double mu, double s) {
  const double f = c2 * std::cos(mu * s) - c1 * std::sin(mu * s);
  const double t = std::tan(c1 * std::sin(mu * s) - c2 * std::cos(mu * s));
  const double root = std::sqrt(mu * mu + t * t);
  return {f / root, f * (mu * mu - 1.0 + t * t) / root};
}

struct PrintedFormComparison {
  double max_kappa_diff = 0.0;
  double max_tau_diff = 0.0;
  // max |kappa^2 + tau^2 - f^2| for each form.
  double printed_norm_residual = 0.0;
  double derived_norm_residual = 0.0;
  // max |atan(tau/kappa) - (theta0 + (c1/mu) sin mu s - (c2/mu) cos mu s)|.
  double derived_angle_residual = 0.0;
};

inline PrintedFormComparison compare_printed_form(double c1, double c2, double mu, double theta0,
                                                  Interval span, std::size_t n = 2001) {
  const IntrinsicProfile derived = IntrinsicProfile::c_constant_precession(c1, c2, mu, theta0);
  PrintedFormComparison r;
  for (double s : numerics::linspace(span.lo, span.hi, n)) {
    const CurvatureTorsion ours = derived.eval(s);
    const CurvatureTorsion printed = printed_c_precession_form(c1, c2, mu, s);
    const double f = c2 * std::cos(mu * s) - c1 * std::sin(mu * s);
    const double angle = theta0 + (c1 * std::sin(mu * s) - c2 * std::cos(mu * s)) / mu;
    r.max_kappa_diff = std::max(r.max_kappa_diff, std::abs(ours.kappa - printed.kappa));
    r.max_tau_diff = std::max(r.max_tau_diff, std::abs(ours.tau - printed.tau));
    r.printed_norm_residual = std::max(
        r.printed_norm_residual,
        std::abs(printed.kappa * printed.kappa + printed.tau * printed.tau - f * f));
    r.derived_norm_residual = std::max(
        r.derived_norm_residual, std::abs(ours.kappa * ours.kappa + ours.tau * ours.tau - f * f));
    r.derived_angle_residual =
        std::max(r.derived_angle_residual, std::abs(std::atan(ours.tau / ours.kappa) - angle));
  }
  return r;
}

struct HyperboloidFit {
  Vec3 axis = Vec3::UnitZ();
  Vec3 center = Vec3::Zero();
  double axis_residual = 0.0;
  // max |x^2 + y^2 - (mu/w)^2 z^2 - 4 mu^2 / w^4| / (4 mu^2 / w^4)
  double max_rel_residual = 0.0;
  // Same quadric with the constant written as 4 mu^2 / w^2; equal at w = 1.
  double max_rel_residual_unit_w = 0.0;
};

/// Fits the precession axis (fixed direction of the unit Darboux vector) and
/// the quadric's center, then evaluates the one-sheeted hyperboloid
///   x^2 + y^2 - (mu^2/w^2) z^2 = 4 mu^2 / w^4
/// in axis-aligned coordinates.
inline HyperboloidFit hyperboloid_residual(const CurveSamples& curve, double w, double mu) {
  if (!(w > 0)) throw InvalidArgument("hyperboloid: w must be positive");
  const FrenetApparatus app = frenet_from_samples(curve);
  std::vector<Vec3> darboux(app.size());
  for (std::size_t i = 0; i < app.size(); ++i) {
    darboux[i] = (app.tau[i] * app.T[i] + app.kappa[i] * app.B[i]).normalized();
  }
  const AxisEstimate axis = estimate_fixed_axis(darboux);
  if (axis.residual > 0.1) {
    throw NoPrecessionAxis("Darboux direction does not keep a constant angle with any axis",
                           axis.residual);
  }

  HyperboloidFit fit;
  fit.axis = axis.u;
  fit.axis_residual = axis.residual;
  const Vec3 u = axis.u;
  const Vec3 e1 = (std::abs(u.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY()).cross(u).normalized();
  const Vec3 e2 = u.cross(e1);

  // x^2 + y^2 - k z^2 = 2a x + 2b y - 2k z0 z + e, linear in (a, b, z0, e).
  const double k = (mu * mu) / (w * w);
  const auto n = static_cast<Eigen::Index>(curve.size());
  Eigen::MatrixXd A(n, 4);
  Eigen::VectorXd rhs(n);
  std::vector<Vec3> local(curve.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec3& p = curve.p[static_cast<std::size_t>(i)];
    const Vec3 q(p.dot(e1), p.dot(e2), p.dot(u));
    local[static_cast<std::size_t>(i)] = q;
    A(i, 0) = q.x();
    A(i, 1) = q.y();
    A(i, 2) = q.z();
    A(i, 3) = 1.0;
    rhs(i) = q.x() * q.x() + q.y() * q.y() - k * q.z() * q.z();
  }
  const Eigen::Vector4d c = A.colPivHouseholderQr().solve(rhs);
  const double a = 0.5 * c(0);
  const double b = 0.5 * c(1);
  const double z0 = k != 0.0 ? -0.5 * c(2) / k : 0.0;
  fit.center = a * e1 + b * e2 + z0 * u;

  const double constant = 4.0 * mu * mu / (w * w * w * w);
  const double constant_unit_w = 4.0 * mu * mu / (w * w);
  for (const Vec3& q : local) {
    const double x = q.x() - a;
    const double y = q.y() - b;
    const double z = q.z() - z0;
    const double lhs = x * x + y * y - k * z * z;
    fit.max_rel_residual = std::max(fit.max_rel_residual, std::abs(lhs - constant) / constant);
    fit.max_rel_residual_unit_w =
        std::max(fit.max_rel_residual_unit_w, std::abs(lhs - constant_unit_w) / constant_unit_w);
  }
  return fit;
}

}  // namespace helix
