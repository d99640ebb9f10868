#pragma once

// Named consistency checks over a grid of synthesized profiles: each check
// carries the measured residual and the tolerance it was judged against.

#include "helix/alt_frame.hpp"
#include "helix/classify.hpp"
#include "helix/curve_model.hpp"
#include "helix/errors.hpp"
#include "helix/frenet.hpp"
#include "helix/indicatrix.hpp"
#include "helix/synthesis.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace helix {

struct Check {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
  // Reported for the record; never fails.
  bool informational = false;
};

struct VerifyGrid {
  std::vector<std::pair<double, double>> constant_precession;               // (w, mu)
  std::vector<std::tuple<double, double, double>> c_constant_precession;  // (c1, c2, mu)
  bool inject_fault = false;
  double tol_analytic = kTolAnalytic;
  double tol_numeric = kTolNumeric;
  double h = 1e-3;
  // The numeric route differentiates every stride-th integrated sample.
  std::size_t stride = 5;
  // Distance kept from the ends of open profile domains.
  double guard = 0.05;

  bool empty() const { return constant_precession.empty() && c_constant_precession.empty(); }
};

inline VerifyGrid default_verify_grid() {
  VerifyGrid g;
  g.constant_precession = {{1.0, 0.5}, {2.0, 1.0}, {1.0, 2.0}};
  g.c_constant_precession = {{0.0, 1.0, 2.0}, {1.0, 1.0, 1.0}, {1.0, 0.0, 0.5}};
  return g;
}

namespace detail {

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

inline Interval shrink(Interval d, double guard) { return {d.lo + guard, d.hi - guard}; }

inline Check bound(std::string name, double residual, double tol, std::string detail = {}) {
  return {std::move(name), std::isfinite(residual) && residual <= tol, residual, tol,
          std::move(detail)};
}

inline FrenetApparatus numeric_apparatus(const CurveSamples& curve, std::size_t stride) {
  return frenet_from_samples(subsample(curve, stride));
}

// max |k_g - sigma| / max(1, |sigma|) for the principal-normal indicatrix.
inline double geodesic_curvature_error(const FrenetApparatus& app, const AltFrameData& alt) {
  const Indicatrix ni = normal_indicatrix(app, alt);
  const SabbanFrame sf = sabban_frame(ni.curve);
  const auto idx = numerics::match_indices(alt.s, ni.intrinsics.s_base);
  double err = 0.0;
  for (std::size_t i = 0; i < sf.t.size(); ++i) {
    if (!std::isfinite(sf.k_g[i])) continue;
    const double sigma = alt.sigma[idx[i]];
    err = std::max(err, std::abs(sf.k_g[i] - sigma) / std::max(1.0, std::abs(sigma)));
  }
  return err;
}

// Slant-helix verdicts of the tangent and binormal indicatrices against the
// C-slant verdict of the base curve.
inline Check indicatrix_equivalence(const std::string& label, const FrenetApparatus& app,
                                    const AltFrameData& alt, double tol) {
  const bool base = is_c_slant_helix(alt, tol).pass;
  const bool tangent = is_slant_helix(indicatrix_sigma(tangent_indicatrix(app, alt)), tol).pass;
  bool binormal = true;
  for (const auto& piece : binormal_indicatrix(app, alt)) {
    binormal = binormal && is_slant_helix(indicatrix_sigma(piece), tol).pass;
  }
  const int mismatches = (tangent != base) + (binormal != base);
  Check c{label + ".indicatrix_equivalence", mismatches == 0, static_cast<double>(mismatches), 0.0,
          std::string("c_slant=") + (base ? "1" : "0") + " tangent_slant=" + (tangent ? "1" : "0") +
              " binormal_slant=" + (binormal ? "1" : "0")};
  return c;
}

template <class F>
void guarded(std::vector<Check>& out, const std::string& name, F&& body) {
  try {
    body();
  } catch (const Error& e) {
    out.push_back({name, false, kNaN, 0.0, std::string("error: ") + e.what()});
  }
}

inline IntrinsicProfile corrupt(const IntrinsicProfile& p, Interval span) {
  const auto s = numerics::linspace(span.lo, span.hi, 8001);
  std::vector<double> kappa(s.size()), tau(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto kt = p.eval(s[i]);
    kappa[i] = kt.kappa * (1.0 + 0.05 * std::sin(5.0 * s[i]));
    tau[i] = kt.tau;
  }
  return IntrinsicProfile::tabulated(s, kappa, tau);
}

}  // namespace detail

inline void verify_constant_precession(double w, double mu, const VerifyGrid& grid,
                                       std::vector<Check>& out) {
  const std::string label = "constant_precession(w=" + detail::fmt(w) + ",mu=" + detail::fmt(mu) + ")";
  const IntrinsicProfile profile = IntrinsicProfile::constant_precession(w, mu);
  const Interval span = detail::shrink(profile.domain(), grid.guard);
  const double sigma_true = -mu / w;

  detail::guarded(out, label, [&] {
    const FrenetIntegration run = synthesize_curve(profile, span, grid.h);
    const AltFrameData alt = alt_frame_from_frenet(run.apparatus);
    double err = 0.0;
    for (double s : alt.sigma) err = std::max(err, std::abs(s - sigma_true));
    out.push_back(detail::bound(label + ".sigma_analytic", err, grid.tol_analytic,
                                "max |sigma + mu/w|"));

    const AltOdeResidual ode = verify_alt_ode(alt);
    out.push_back(detail::bound(label + ".alt_frame_ode",
                                std::max({ode.max[0], ode.max[1], ode.max[2]}), grid.tol_analytic));

    const Verdict cp = is_constant_precession(run.apparatus, grid.tol_analytic);
    out.push_back({label + ".classify_constant_precession", cp.pass,
                   std::max(cp.stat.rel_std, cp.fitted.at("phase_residual")), grid.tol_analytic,
                   "fitted mu " + detail::fmt(cp.fitted.at("mu"))});

    out.push_back(detail::indicatrix_equivalence(label, run.apparatus, alt, grid.tol_analytic));

    const FrenetApparatus num = detail::numeric_apparatus(run.curve, grid.stride);
    const AltFrameData alt_num = alt_frame_from_frenet(num);
    double err_num = 0.0;
    for (double s : alt_num.sigma) err_num = std::max(err_num, std::abs(s - sigma_true));
    out.push_back(detail::bound(label + ".sigma_numeric", err_num, grid.tol_numeric,
                                "integrate then differentiate"));
    out.push_back(detail::bound(label + ".geodesic_curvature",
                                detail::geodesic_curvature_error(num, alt_num), grid.tol_numeric,
                                "k_g of the normal indicatrix against sigma"));

    const HyperboloidFit fit = hyperboloid_residual(run.curve, w, mu);
    out.push_back(detail::bound(label + ".hyperboloid", std::max(fit.max_rel_residual, fit.axis_residual),
                                grid.tol_numeric, "constant 4 mu^2/w^4"));
    out.push_back({label + ".hyperboloid_unit_w_constant", true, fit.max_rel_residual_unit_w, 0.0,
                   "same quadric with constant 4 mu^2/w^2", true});
  });
}

inline void verify_c_constant_precession(const std::string& label, const IntrinsicProfile& profile,
                                         double c1, double c2, double mu, Interval span,
                                         const VerifyGrid& grid, std::vector<Check>& out) {
  const double delta = std::hypot(c1, c2);
  const double target = delta / mu;

  detail::guarded(out, label, [&] {
    const FrenetIntegration run = synthesize_curve(profile, span, grid.h);
    const AltFrameData alt = alt_frame_from_frenet(run.apparatus);

    const CriterionSeries crit = c_slant_criterion(alt);
    const Verdict cv = constancy(crit.value, grid.tol_analytic, crit.coverage);
    const double mean_err = std::abs(cv.stat.mean - target) / std::abs(target);
    out.push_back(detail::bound(label + ".criterion_analytic", std::max(cv.stat.rel_std, mean_err),
                                grid.tol_analytic,
                                "mean " + detail::fmt(cv.stat.mean) + " vs " + detail::fmt(target)));

    const Verdict slant = is_c_slant_helix(alt, grid.tol_analytic);
    out.push_back({label + ".c_slant_axis_route", slant.fitted.at("axis_residual") <= grid.tol_analytic,
                   slant.fitted.at("axis_residual"), grid.tol_analytic, "std of <C, u>"});

    const Verdict ccp = is_c_constant_precession(alt, grid.tol_analytic);
    const double d = ccp.fitted.at("delta");
    const double m = ccp.fitted.at("mu");
    const double lambda = ccp.fitted.at("lambda");
    const double cphi = ccp.fitted.at("cos_phi");
    const double sphi = ccp.fitted.at("sin_phi");
    out.push_back({label + ".classify_c_constant_precession", ccp.pass,
                   std::max(ccp.stat.rel_std, ccp.fitted.at("structure_residual")), grid.tol_analytic,
                   "delta " + detail::fmt(d) + " mu " + detail::fmt(m)});
    out.push_back(detail::bound(label + ".lambda_identity", std::abs(lambda * lambda - d * d - m * m),
                                1e-12, "lambda^2 - delta^2 - mu^2"));
    out.push_back(detail::bound(label + ".angle_identity", std::abs(cphi * cphi + sphi * sphi - 1.0),
                                1e-12, "cos^2 + sin^2 - 1"));
    out.push_back(detail::bound(label + ".tan_angle_matches_criterion",
                                std::abs(ccp.fitted.at("tan_c_axis_angle") - cv.stat.mean) /
                                    std::abs(cv.stat.mean),
                                grid.tol_analytic));

    const DFixedReport fixed = verify_d_fixed(alt, mu);
    out.push_back(detail::bound(label + ".d_fixed", fixed.max_dprime, 1e-5, "max |d'|"));
    const DFixedReport off = verify_d_fixed(alt, 1.5 * mu);
    out.push_back({label + ".d_moves_for_wrong_mu", off.max_dprime > 0.1 * fixed.delta,
                   off.max_dprime, 0.1 * fixed.delta, "max |d'| with mu scaled by 1.5 (must exceed)"});

    out.push_back(detail::indicatrix_equivalence(label, run.apparatus, alt, grid.tol_analytic));

    const FrenetApparatus num = detail::numeric_apparatus(run.curve, grid.stride);
    const AltFrameData alt_num = alt_frame_from_frenet(num);
    const CriterionSeries crit_num = c_slant_criterion(alt_num);
    const Verdict cn = constancy(crit_num.value, grid.tol_numeric, crit_num.coverage);
    out.push_back(detail::bound(label + ".criterion_numeric", cn.stat.rel_std, grid.tol_numeric,
                                "mean " + detail::fmt(cn.stat.mean)));
    out.push_back(detail::bound(label + ".geodesic_curvature",
                                detail::geodesic_curvature_error(num, alt_num), grid.tol_numeric,
                                "k_g of the normal indicatrix against sigma"));
  });
}

inline void verify_closed_form(double c1, double c2, double mu, Interval span,
                               const VerifyGrid& grid, std::vector<Check>& out) {
  const std::string label = "closed_form(c1=" + detail::fmt(c1) + ",c2=" + detail::fmt(c2) +
                            ",mu=" + detail::fmt(mu) + ")";
  const PrintedFormComparison cmp = compare_printed_form(c1, c2, mu, std::numbers::pi / 2, span);
  out.push_back(detail::bound(label + ".arctan_h", cmp.derived_angle_residual, grid.tol_analytic,
                              "atan(tau/kappa) against theta0 + (c1 sin mu s - c2 cos mu s)/mu"));
  out.push_back(detail::bound(label + ".norm", cmp.derived_norm_residual, grid.tol_analytic,
                              "kappa^2 + tau^2 - f^2"));
  out.push_back({label + ".printed_form_disagreement", true,
                 std::max(cmp.max_kappa_diff, cmp.max_tau_diff), 0.0,
                 "max kappa diff " + detail::fmt(cmp.max_kappa_diff) + ", max tau diff " +
                     detail::fmt(cmp.max_tau_diff) + ", printed |kappa^2 + tau^2 - f^2| up to " +
                     detail::fmt(cmp.printed_norm_residual),
                 true});
}

inline void verify_integrator(std::vector<Check>& out) {
  detail::guarded(out, "integrator", [&] {
    const auto run = synthesize_curve(IntrinsicProfile::circular_helix(1.0, 0.0),
                                      {0.0, 2.0 * std::numbers::pi}, 1e-3);
    out.push_back(detail::bound("integrator.unit_circle_closure",
                                (run.curve.p.back() - run.curve.p.front()).norm(), 1e-8));
    out.push_back(detail::bound("integrator.frame_drift_per_length", run.drift_per_length, 1e-9));
  });
}

/// Spherical circle of colatitude `colatitude` about the z axis, unit speed,
/// `turns` full turns.
inline SphericalCurve spherical_circle(double colatitude, double turns, std::size_t n) {
  const double r = std::sin(colatitude);
  const double length = turns * 2.0 * std::numbers::pi * r;
  SphericalCurve sc;
  for (double t : numerics::linspace(0.0, length, n)) {
    sc.t.push_back(t);
    sc.gamma.push_back(Vec3(r * std::cos(t / r), r * std::sin(t / r), std::cos(colatitude)));
  }
  return sc;
}

inline void verify_spherical_construction(const VerifyGrid& grid, std::vector<Check>& out) {
  detail::guarded(out, "spherical_construction.small_circle", [&] {
    const CurveSamples beta = integrate_Y(spherical_circle(std::numbers::pi / 4, 2.0, 4000));
    const FrenetApparatus app = frenet_from_samples(beta);
    const Verdict v = is_c_slant_helix(alt_frame_from_frenet(app), grid.tol_numeric);
    out.push_back({"spherical_construction.small_circle", v.pass, v.stat.rel_std, grid.tol_numeric,
                   v.notes.empty() ? "" : v.notes.front()});
  });
  const CurveSamples line = integrate_Y(spherical_circle(std::numbers::pi / 2, 2.0, 4000));
  try {
    frenet_from_samples(line);
    out.push_back({"spherical_construction.great_circle_degenerate", false, 0.0, 0.0,
                   "expected a straight line"});
  } catch (const DegenerateCurve& e) {
    out.push_back({"spherical_construction.great_circle_degenerate", true, e.kappa_estimate(), 0.0,
                   e.what()});
  }
}

/// Fixed slant-only and generic profiles for the indicatrix equivalence.
inline std::vector<std::pair<std::string, IntrinsicProfile>> equivalence_profiles() {
  std::vector<std::pair<std::string, IntrinsicProfile>> out;
  FgProfile fg;
  fg.f = [](double s) { return 1.0 + 0.2 * s; };
  fg.g = [](double s) { return 0.5 * (1.0 + 0.2 * s); };
  fg.domain = {0.0, 3.0};
  out.emplace_back("slant(sigma=0.5)", fg_to_kappa_tau(fg, 0.3, 5e-4).profile);

  auto tab = [](std::function<double(double)> k, std::function<double(double)> t) {
    const auto s = numerics::linspace(0.0, 3.0, 6001);
    std::vector<double> kk, tt;
    for (double x : s) {
      kk.push_back(k(x));
      tt.push_back(t(x));
    }
    return IntrinsicProfile::tabulated(s, kk, tt);
  };
  out.emplace_back("generic(1)", tab([](double s) { return 1.0 + 0.3 * std::sin(s); },
                                     [](double s) { return 0.5 + 0.2 * std::cos(2.0 * s); }));
  out.emplace_back("generic(2)", tab([](double) { return 1.0; }, [](double s) { return s; }));
  out.emplace_back("generic(3)", tab([](double s) { return 2.0 + s * s; }, [](double) { return 1.0; }));
  out.emplace_back("generic(4)", tab([](double s) { return std::exp(-s); },
                                     [](double s) { return 1.0 + s; }));
  return out;
}

inline std::vector<Check> run_verify(const VerifyGrid& grid) {
  if (grid.empty()) throw InvalidArgument("verify: empty parameter grid");
  if (!(grid.tol_analytic > 0) || !(grid.tol_numeric > 0) || !(grid.h > 0)) {
    throw InvalidArgument("verify: tolerances and h must be positive");
  }
  std::vector<Check> out;
  for (const auto& [w, mu] : grid.constant_precession) verify_constant_precession(w, mu, grid, out);
  for (const auto& [c1, c2, mu] : grid.c_constant_precession) {
    const IntrinsicProfile profile = profile_c_constant_precession(c1, c2, mu);
    const Interval span = detail::shrink(profile.domain(), grid.guard);
    const std::string label = "c_constant_precession(c1=" + detail::fmt(c1) + ",c2=" +
                              detail::fmt(c2) + ",mu=" + detail::fmt(mu) + ")";
    verify_c_constant_precession(label, profile, c1, c2, mu, span, grid, out);
    verify_closed_form(c1, c2, mu, span, grid, out);
    if (grid.inject_fault) {
      verify_c_constant_precession("fault:" + label, detail::corrupt(profile, span), c1, c2, mu,
                                   span, grid, out);
    }
  }
  for (const auto& [name, profile] : equivalence_profiles()) {
    detail::guarded(out, name, [&] {
      const auto run = synthesize_curve(profile, profile.domain(), grid.h);
      out.push_back(detail::indicatrix_equivalence(name, run.apparatus,
                                                   alt_frame_from_frenet(run.apparatus),
                                                   grid.tol_analytic));
    });
  }
  verify_integrator(out);
  verify_spherical_construction(grid, out);
  return out;
}

inline bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

}  // namespace helix
