#pragma once

// Spherical images of a space curve (tangent, principal normal, binormal
// indicatrices), their natural parameters and curvatures, and the Sabban
// frame {gamma, T, Y = gamma x T} of an arbitrary spherical curve.
//
// In terms of the alternative frame the indicatrix Frenet frames are
//   tangent:  {N, C, W}            kappa_T = f/kappa,  tau_T = g/kappa
//   normal:   {C, (sigma W - N)/r, (W + sigma N)/r},  r = sqrt(1 + sigma^2)
//   binormal: {-N, -C, W}          kappa_B = f/tau,    tau_B = -g/tau
// with the standard Frenet-Serret sign pattern.

#include "helix/alt_frame.hpp"
#include "helix/curve_model.hpp"
#include "helix/errors.hpp"
#include "helix/frenet.hpp"
#include "helix/numerics.hpp"
#include "helix/types.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace helix {

struct SphericalCurve {
  std::vector<double> t;
  std::vector<Vec3> gamma;

  std::size_t size() const { return t.size(); }
};

enum class IndicatrixKind { Tangent, Normal, Binormal };

inline const char* to_string(IndicatrixKind k) {
  switch (k) {
    case IndicatrixKind::Tangent: return "tangent";
    case IndicatrixKind::Normal: return "normal";
    case IndicatrixKind::Binormal: return "binormal";
  }
  return "?";
}

struct IndicatrixIntrinsics {
  IndicatrixKind which = IndicatrixKind::Tangent;
  std::vector<double> s_base;  // arc length of the base curve
  std::vector<double> s_ind;   // natural parameter of the indicatrix
  std::vector<double> speed;   // ds_ind / ds_base
  std::vector<double> kappa;
  std::vector<double> tau;
};

// Frenet frame of the indicatrix expressed through the base curve.
struct IndicatrixFrames {
  std::vector<Vec3> T, N, B;
};

struct Indicatrix {
  SphericalCurve curve;  // parameterized by s_ind
  IndicatrixIntrinsics intrinsics;
  IndicatrixFrames frames;
};

namespace detail {

struct Joined {
  std::vector<std::size_t> app_index;  // alt sample k -> apparatus index
};

inline Joined join(const FrenetApparatus& app, const AltFrameData& alt) {
  return {numerics::match_indices(app.s, alt.s)};
}

}  // namespace detail

inline Indicatrix tangent_indicatrix(const FrenetApparatus& app, const AltFrameData& alt) {
  const auto j = detail::join(app, alt);
  Indicatrix out;
  auto& in = out.intrinsics;
  in.which = IndicatrixKind::Tangent;
  std::vector<double> kappa(alt.size());
  for (std::size_t k = 0; k < alt.size(); ++k) {
    const std::size_t i = j.app_index[k];
    kappa[k] = app.kappa[i];
    out.curve.gamma.push_back(app.T[i]);
    in.kappa.push_back(alt.f[k] / app.kappa[i]);
    in.tau.push_back(alt.g[k] / app.kappa[i]);
    in.speed.push_back(app.kappa[i]);
    out.frames.T.push_back(alt.N[k]);
    out.frames.N.push_back(alt.C[k]);
    out.frames.B.push_back(alt.W[k]);
  }
  in.s_base = alt.s;
  in.s_ind = numerics::cumulative_integral(alt.s, kappa);
  out.curve.t = in.s_ind;
  return out;
}

inline Indicatrix normal_indicatrix(const FrenetApparatus& app, const AltFrameData& alt) {
  (void)detail::join(app, alt);
  const auto dsigma = numerics::diff(alt.s, alt.sigma, numerics::kOneSidedEdge);
  Indicatrix out;
  auto& in = out.intrinsics;
  in.which = IndicatrixKind::Normal;
  std::vector<double> s_keep;
  std::vector<double> f_keep;
  for (std::size_t k = 0; k < alt.size(); ++k) {
    if (!std::isfinite(dsigma[k])) continue;
    const double sigma = alt.sigma[k];
    const double r = std::sqrt(1.0 + sigma * sigma);
    const double gamma_ratio = dsigma[k] / (alt.f[k] * r * r * r);
    s_keep.push_back(alt.s[k]);
    f_keep.push_back(alt.f[k]);
    out.curve.gamma.push_back(alt.N[k]);
    in.kappa.push_back(r);
    in.tau.push_back(gamma_ratio * r);
    in.speed.push_back(alt.f[k]);
    out.frames.T.push_back(alt.C[k]);
    out.frames.N.push_back((sigma * alt.W[k] - alt.N[k]) / r);
    out.frames.B.push_back((alt.W[k] + sigma * alt.N[k]) / r);
  }
  if (s_keep.size() < numerics::kStencilWidth) {
    throw InsufficientData("normal indicatrix: too few samples with defined sigma'");
  }
  in.s_base = s_keep;
  in.s_ind = numerics::cumulative_integral(s_keep, f_keep);
  out.curve.t = in.s_ind;
  return out;
}

/// Binormal indicatrix on each maximal piece where tau keeps one sign.
/// Within a piece s_B = integral of |tau| (increasing), kappa_B = f/|tau|,
/// tau_B = -g/tau.
inline std::vector<Indicatrix> binormal_indicatrix(const FrenetApparatus& app,
                                                   const AltFrameData& alt) {
  const auto j = detail::join(app, alt);
  double f_max = 0.0;
  for (double f : alt.f) f_max = std::max(f_max, f);
  const double tau_min = 1e-8 * f_max;

  std::vector<Indicatrix> pieces;
  auto flush = [&](std::size_t b, std::size_t e) {
    if (e - b < numerics::kStencilWidth) return;
    Indicatrix ind;
    auto& in = ind.intrinsics;
    in.which = IndicatrixKind::Binormal;
    std::vector<double> abs_tau;
    for (std::size_t k = b; k < e; ++k) {
      const std::size_t i = j.app_index[k];
      const double tau = app.tau[i];
      const double sign = tau > 0 ? 1.0 : -1.0;
      abs_tau.push_back(std::abs(tau));
      in.s_base.push_back(alt.s[k]);
      ind.curve.gamma.push_back(app.B[i]);
      in.kappa.push_back(alt.f[k] / std::abs(tau));
      in.tau.push_back(-alt.g[k] / tau);
      in.speed.push_back(std::abs(tau));
      ind.frames.T.push_back(-sign * alt.N[k]);
      ind.frames.N.push_back(-sign * alt.C[k]);
      ind.frames.B.push_back(alt.W[k]);
    }
    in.s_ind = numerics::cumulative_integral(in.s_base, abs_tau);
    ind.curve.t = in.s_ind;
    pieces.push_back(std::move(ind));
  };

  std::size_t begin = 0;
  int sign = 0;
  for (std::size_t k = 0; k <= alt.size(); ++k) {
    int here = 0;
    if (k < alt.size()) {
      const double tau = app.tau[j.app_index[k]];
      here = std::abs(tau) > tau_min ? (tau > 0 ? 1 : -1) : 0;
    }
    if (k == alt.size() || here != sign) {
      if (sign != 0) flush(begin, k);
      begin = k;
      sign = here;
    }
  }
  if (pieces.empty()) {
    throw DegenerateCurve("torsion vanishes; no monotone pieces for the binormal indicatrix");
  }
  return pieces;
}

/// Slant-helix ratio of the indicatrix itself, computed along the base
/// parameter: sigma_ind = (d theta_ind / ds_base) / (speed * |(kappa, tau)|)
/// with theta_ind = atan2(tau_ind, kappa_ind).
inline SigmaProfile indicatrix_sigma(const Indicatrix& ind) {
  const auto& in = ind.intrinsics;
  if (in.s_base.size() < numerics::kStencilWidth) {
    throw InsufficientData("indicatrix sigma needs at least 5 samples");
  }
  std::vector<double> theta(in.s_base.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    theta[i] = std::atan2(in.tau[i], in.kappa[i]);
    if (i > 0) {
      theta[i] -= 2.0 * std::numbers::pi *
                  std::round((theta[i] - theta[i - 1]) / (2.0 * std::numbers::pi));
    }
  }
  const auto dtheta = numerics::diff(in.s_base, theta, numerics::kOneSidedEdge);
  SigmaProfile out;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (!std::isfinite(dtheta[i])) continue;
    out.s.push_back(in.s_base[i]);
    out.sigma.push_back(dtheta[i] / (in.speed[i] * std::hypot(in.kappa[i], in.tau[i])));
  }
  if (out.s.size() < 3) throw InsufficientData("indicatrix sigma: too few interior samples");
  out.coverage = static_cast<double>(out.s.size()) / static_cast<double>(theta.size());
  return out;
}

struct SabbanFrame {
  std::vector<double> t;
  std::vector<Vec3> gamma, T, Y;
  // NaN on the outermost samples where T' is one-sided.
  std::vector<double> k_g;
};

/// Uniform-parameter copy of a spherical curve (spline, then renormalized
/// onto the sphere).
inline SphericalCurve resample_spherical(const SphericalCurve& sc, std::size_t n) {
  CurveSamples c{sc.t, sc.gamma};
  CurveSamples r = resample_arclength(c, n);
  for (auto& g : r.p) g.normalize();
  return {std::move(r.s), std::move(r.p)};
}

inline void check_spherical(const SphericalCurve& sc) {
  check_samples(CurveSamples{sc.t, sc.gamma}, 7);
  for (std::size_t i = 0; i < sc.size(); ++i) {
    if (std::abs(sc.gamma[i].norm() - 1.0) > 1e-10) {
      throw MalformedInput("spherical curve: point " + std::to_string(i) + " is not unit length");
    }
  }
}

/// Sabban frame: T = gamma', Y = gamma x T, k_g = <T', Y>. The parameter must
/// be arc length; non-uniform grids are differentiated with non-uniform
/// stencils rather than resampled.
inline SabbanFrame sabban_frame(const SphericalCurve& sc,
                                double eps_speed = kDefaultSpeedTolerance) {
  check_spherical(sc);
  const SpeedReport speed = validate_unit_speed(CurveSamples{sc.t, sc.gamma}, eps_speed);
  if (!speed.pass) {
    throw ReparameterizeFirst("spherical curve is not parameterized by arc length (deviation " +
                              std::to_string(speed.worst_relative_deviation) + " at segment " +
                              std::to_string(speed.worst_segment) + ")");
  }
  const bool uniform = numerics::is_uniform(sc.t);
  auto d = [&](const std::vector<Vec3>& v, std::size_t trim) {
    return uniform ? numerics::diff(sc.t, v, trim) : numerics::diff_nonuniform(sc.t, v, trim);
  };
  SabbanFrame out;
  out.t = sc.t;
  out.gamma = sc.gamma;
  out.T = d(sc.gamma, 0);
  for (auto& v : out.T) v.normalize();
  out.Y.resize(sc.size());
  for (std::size_t i = 0; i < sc.size(); ++i) out.Y[i] = sc.gamma[i].cross(out.T[i]);
  const auto dT = d(out.T, numerics::kOneSidedEdge);
  out.k_g.resize(sc.size());
  for (std::size_t i = 0; i < sc.size(); ++i) out.k_g[i] = dT[i].dot(out.Y[i]);
  return out;
}

/// beta(t) = integral of Y from the first sample; beta(t_0) = 0.
inline CurveSamples integrate_Y(const SphericalCurve& sc) {
  const SabbanFrame frame = sabban_frame(sc);
  return {frame.t, numerics::cumulative_integral(frame.t, frame.Y)};
}

}  // namespace helix
