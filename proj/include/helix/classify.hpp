#pragma once

// Thresholded detectors for the helix hierarchy. Each returns a verdict and
// the statistic it was decided on; degeneracies are reported as notes rather
// than errors.

#include "helix/alt_frame.hpp"
#include "helix/errors.hpp"
#include "helix/frenet.hpp"
#include "helix/numerics.hpp"
#include "helix/types.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace helix {

inline constexpr double kEpsAbs = 1e-12;
inline constexpr double kTolAnalytic = 1e-6;
inline constexpr double kTolNumeric = 1e-3;

struct ConstancyStat {
  double mean = 0.0;
  double rel_std = 0.0;  // stddev / (|mean| + eps_abs)
  double coverage = 1.0;
};

struct Verdict {
  bool pass = false;
  ConstancyStat stat;
  std::vector<std::string> notes;
  std::map<std::string, double> fitted;
};

inline Verdict constancy(std::span<const double> values, double tol, double coverage = 1.0,
                         double eps_abs = kEpsAbs) {
  if (values.size() < 3) throw InsufficientData("constancy needs at least 3 values");
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidArgument("constancy: non-finite value");
  }
  const auto ms = numerics::mean_std(values);
  Verdict v;
  v.stat.mean = ms.mean;
  v.stat.rel_std = ms.stddev / (std::abs(ms.mean) + eps_abs);
  v.stat.coverage = coverage;
  v.pass = v.stat.rel_std <= tol;
  return v;
}

inline Verdict constancy(const std::vector<double>& values, double tol, double coverage = 1.0,
                         double eps_abs = kEpsAbs) {
  return constancy(std::span<const double>(values), tol, coverage, eps_abs);
}

namespace detail {

// A dimensionless quantity that is zero to within tol is constant, whatever
// its relative spread.
inline void accept_if_zero(Verdict& v, std::span<const double> values, double tol,
                           const std::string& note) {
  if (numerics::max_abs(values) <= tol) {
    v.pass = true;
    v.notes.push_back(note);
  }
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};

inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const auto mx = numerics::mean_std(x);
  const auto my = numerics::mean_std(y);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx.mean) * (y[i] - my.mean);
    sxx += (x[i] - mx.mean) * (x[i] - mx.mean);
  }
  LineFit fit;
  fit.slope = sxx > 0 ? sxy / sxx : 0.0;
  fit.intercept = my.mean - fit.slope * mx.mean;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss += r * r;
  }
  fit.rms = std::sqrt(ss / static_cast<double>(x.size()));
  return fit;
}

}  // namespace detail

/// General helix: H = tau/kappa constant. A plane curve (H = 0) passes as a
/// degenerate helix.
inline Verdict is_general_helix(const FrenetApparatus& app, double tol) {
  const auto H = harmonic_curvature(app);
  Verdict v = constancy(H, tol, app.coverage);
  detail::accept_if_zero(v, H, tol, "degenerate (tau=0)");
  return v;
}

/// Slant helix: sigma = g/f constant.
inline Verdict is_slant_helix(std::span<const double> sigma, double tol, double coverage = 1.0) {
  Verdict v = constancy(sigma, tol, coverage);
  detail::accept_if_zero(v, sigma, tol, "degenerate (sigma=0)");
  return v;
}

inline Verdict is_slant_helix(const AltFrameData& alt, double tol) {
  return is_slant_helix(alt.sigma, tol, alt.coverage);
}

inline Verdict is_slant_helix(const SigmaProfile& sig, double tol) {
  return is_slant_helix(sig.sigma, tol, sig.coverage);
}

struct CriterionSeries {
  std::vector<double> s;
  std::vector<double> value;
  double coverage = 1.0;
};

/// (f^2 + g^2)^(3/2) / (f^2 (g/f)'), the tangent of the angle between C and
/// the C-slant axis. Samples where (g/f)' vanishes are skipped.
inline CriterionSeries c_slant_criterion(const AltFrameData& alt) {
  if (alt.size() < numerics::kStencilWidth) throw InsufficientData("criterion needs 5 samples");
  const auto dsigma = numerics::diff(alt.s, alt.sigma, numerics::kOneSidedEdge);
  CriterionSeries out;
  for (std::size_t i = 0; i < alt.size(); ++i) {
    if (!std::isfinite(dsigma[i])) continue;
    if (sigma_derivative_vanishes(dsigma[i], alt.sigma[i])) continue;
    const double f = alt.f[i];
    const double w2 = f * f + alt.g[i] * alt.g[i];
    out.s.push_back(alt.s[i]);
    out.value.push_back(w2 * std::sqrt(w2) / (f * f * dsigma[i]));
  }
  if (out.s.empty()) {
    throw SlantHelixDegenerate("(g/f)' vanishes identically; the curve is a slant helix");
  }
  out.coverage = alt.coverage * static_cast<double>(out.s.size()) / static_cast<double>(alt.size());
  return out;
}

/// C-slant helix by two routes: constancy of the tan(phi) criterion, and a
/// fixed axis for the C field. Passing either route passes the detector.
/// The criterion route is undefined for slant helices.
inline Verdict is_c_slant_helix(const AltFrameData& alt, double tol) {
  Verdict v;
  const Verdict slant = is_slant_helix(alt, tol);

  std::optional<Verdict> criterion;
  if (slant.pass) {
    v.notes.push_back("criterion route degenerate: g/f constant");
  } else {
    try {
      const auto series = c_slant_criterion(alt);
      if (series.value.size() >= 3) criterion = constancy(series.value, tol, series.coverage);
    } catch (const SlantHelixDegenerate&) {
      v.notes.push_back("criterion route degenerate: (g/f)' = 0");
    }
  }

  const AxisEstimate axis = estimate_fixed_axis(alt.C);
  const bool axis_pass = axis.residual <= tol;
  v.fitted["axis_residual"] = axis.residual;
  v.fitted["axis_cos_angle"] = axis.cos_angle_mean;
  v.fitted["axis_x"] = axis.u.x();
  v.fitted["axis_y"] = axis.u.y();
  v.fitted["axis_z"] = axis.u.z();

  if (criterion) {
    v.stat = criterion->stat;
    v.pass = criterion->pass || axis_pass;
    v.fitted["criterion_mean"] = criterion->stat.mean;
    v.fitted["criterion_rel_std"] = criterion->stat.rel_std;
    v.fitted["routes_agree"] = criterion->pass == axis_pass ? 1.0 : 0.0;
    if (criterion->pass != axis_pass) v.notes.push_back("criterion and axis routes disagree");
  } else {
    v.stat = {axis.cos_angle_mean, axis.residual, alt.coverage};
    v.pass = axis_pass;
    if (axis_pass) v.notes.push_back("degenerate: C constant in a fixed plane");
  }
  return v;
}

/// Constant precession: sqrt(kappa^2 + tau^2) = w constant and the phase
/// atan2(kappa, tau) affine in s with slope mu.
inline Verdict is_constant_precession(const FrenetApparatus& app, double tol) {
  std::vector<double> w(app.size());
  std::vector<double> phase(app.size());
  for (std::size_t i = 0; i < app.size(); ++i) {
    w[i] = std::hypot(app.kappa[i], app.tau[i]);
    phase[i] = std::atan2(app.kappa[i], app.tau[i]);
    if (i > 0) {
      phase[i] -= 2.0 * std::numbers::pi *
                  std::round((phase[i] - phase[i - 1]) / (2.0 * std::numbers::pi));
    }
  }
  Verdict v = constancy(w, tol, app.coverage);
  const auto fit = detail::fit_line(app.s, phase);
  const bool phase_pass = fit.rms <= tol;
  v.pass = v.pass && phase_pass;
  v.fitted["w"] = v.stat.mean;
  v.fitted["mu"] = fit.slope;
  v.fitted["phase_residual"] = fit.rms;
  const double length = app.s.back() - app.s.front();
  if (std::abs(fit.slope) * length <= tol) v.notes.push_back("degenerate: mu = 0");
  if (!phase_pass) v.notes.push_back("phase is not affine in s");
  return v;
}

/// C-constant precession: |D| = sqrt(f^2 + g^2) = delta constant and
/// g' = mu f, f' = -mu g for a single mu (least squares unless a hint is
/// given). Reports lambda = sqrt(delta^2 + mu^2), the angle between D and
/// d = D + mu C (cos = delta/lambda, sin = mu/lambda), and tan of the angle
/// between C and the axis (delta/mu).
inline Verdict is_c_constant_precession(const AltFrameData& alt, double tol,
                                        std::optional<double> mu_hint = std::nullopt) {
  std::vector<double> delta(alt.size());
  for (std::size_t i = 0; i < alt.size(); ++i) delta[i] = std::hypot(alt.f[i], alt.g[i]);
  Verdict v = constancy(delta, tol, alt.coverage);

  const auto df = numerics::diff(alt.s, alt.f, numerics::kOneSidedEdge);
  const auto dg = numerics::diff(alt.s, alt.g, numerics::kOneSidedEdge);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < alt.size(); ++i) {
    if (!std::isfinite(df[i]) || !std::isfinite(dg[i])) continue;
    num += dg[i] * alt.f[i] - df[i] * alt.g[i];
    den += alt.f[i] * alt.f[i] + alt.g[i] * alt.g[i];
  }
  if (den == 0.0) throw InsufficientData("c-constant precession: no samples with f', g'");
  const double mu = mu_hint ? *mu_hint : num / den;
  const double d = v.stat.mean;

  double residual = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < alt.size(); ++i) {
    if (!std::isfinite(df[i]) || !std::isfinite(dg[i])) continue;
    const double r = std::hypot(dg[i] - mu * alt.f[i], df[i] + mu * alt.g[i]);
    residual += r * r;
    const double cs = std::cos(mu * alt.s[i]);
    const double sn = std::sin(mu * alt.s[i]);
    c1 += alt.g[i] * cs - alt.f[i] * sn;
    c2 += alt.f[i] * cs + alt.g[i] * sn;
    ++used;
  }
  // RMS rather than max: the two outermost usable samples carry the
  // one-sided error of a second-level derivative.
  const double scale = d * std::max(std::abs(mu), d);
  const double rel_residual = std::sqrt(residual / static_cast<double>(used)) / scale;
  v.pass = v.pass && rel_residual <= tol;

  const double lambda = std::hypot(d, mu);
  v.fitted["delta"] = d;
  v.fitted["mu"] = mu;
  v.fitted["lambda"] = lambda;
  v.fitted["cos_phi"] = d / lambda;
  v.fitted["sin_phi"] = mu / lambda;
  v.fitted["tan_c_axis_angle"] = mu != 0.0 ? d / mu : kInf;
  v.fitted["c1"] = c1 / static_cast<double>(used);
  v.fitted["c2"] = c2 / static_cast<double>(used);
  v.fitted["structure_residual"] = rel_residual;
  if (std::abs(mu) <= tol * d) {
    v.notes.push_back("degenerate: mu = 0, constant f,g: C precesses uniformly about fixed d = D");
  }
  if (rel_residual > tol) v.notes.push_back("g' = mu f, f' = -mu g violated");
  return v;
}

struct DFixedReport {
  double max_dprime = 0.0;   // max |d'|
  double max_res_g = 0.0;    // max |g' - sign mu f|
  double max_res_f = 0.0;    // max |f' + sign mu g|
  double delta = 0.0;        // mean |D|
};

/// Builds d = D + sign mu C and differentiates it; d is a fixed vector
/// exactly when g' = sign mu f and f' = -sign mu g.
inline DFixedReport verify_d_fixed(const AltFrameData& alt, double mu, int sign = 1) {
  if (alt.size() < 2 * numerics::kOneSidedEdge + numerics::kStencilWidth) {
    throw InsufficientData("verify_d_fixed needs at least 9 samples");
  }
  const double m = sign >= 0 ? mu : -mu;
  std::vector<Vec3> d(alt.size());
  for (std::size_t i = 0; i < alt.size(); ++i) d[i] = alt.D[i] + m * alt.C[i];
  const auto dd = numerics::diff(alt.s, d, numerics::kOneSidedEdge);
  const auto df = numerics::diff(alt.s, alt.f, numerics::kOneSidedEdge);
  const auto dg = numerics::diff(alt.s, alt.g, numerics::kOneSidedEdge);
  DFixedReport r;
  double delta_sum = 0.0;
  for (std::size_t i = 0; i < alt.size(); ++i) {
    delta_sum += std::hypot(alt.f[i], alt.g[i]);
    if (!dd[i].allFinite() || !std::isfinite(df[i]) || !std::isfinite(dg[i])) continue;
    r.max_dprime = std::max(r.max_dprime, dd[i].norm());
    r.max_res_g = std::max(r.max_res_g, std::abs(dg[i] - m * alt.f[i]));
    r.max_res_f = std::max(r.max_res_f, std::abs(df[i] + m * alt.g[i]));
  }
  r.delta = delta_sum / static_cast<double>(alt.size());
  return r;
}

// ---------------------------------------------------------------------------

inline const std::vector<std::string>& all_detectors() {
  static const std::vector<std::string> names = {"general_helix", "slant_helix", "c_slant_helix",
                                                 "constant_precession", "c_constant_precession"};
  return names;
}

struct ClassificationReport {
  std::map<std::string, Verdict> detectors;
  std::map<std::string, double> tolerances;
  std::vector<std::string> notes;
};

inline ClassificationReport classify_curve(const FrenetApparatus& app, const AltFrameData& alt,
                                           double tol,
                                           const std::vector<std::string>& names = all_detectors()) {
  ClassificationReport report;
  report.tolerances["constancy"] = tol;
  report.tolerances["eps_abs"] = kEpsAbs;
  for (const auto& name : names) {
    if (report.detectors.count(name)) continue;
    if (name == "general_helix") report.detectors[name] = is_general_helix(app, tol);
    else if (name == "slant_helix") report.detectors[name] = is_slant_helix(alt, tol);
    else if (name == "c_slant_helix") report.detectors[name] = is_c_slant_helix(alt, tol);
    else if (name == "constant_precession") report.detectors[name] = is_constant_precession(app, tol);
    else if (name == "c_constant_precession")
      report.detectors[name] = is_c_constant_precession(alt, tol);
    else throw InvalidArgument("unknown detector: " + name);
  }
  if (app.coverage < 1.0) {
    report.notes.push_back("frame undefined or one-sided on " +
                           std::to_string(static_cast<int>(std::round((1.0 - app.coverage) * 100))) +
                           "% of samples");
  }
  return report;
}

}  // namespace helix
