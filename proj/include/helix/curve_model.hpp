#pragma once

#include "helix/errors.hpp"
#include "helix/numerics.hpp"
#include "helix/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace helix {

/// Arc-length parameterized polyline: positions p[i] at arc length s[i].
struct CurveSamples {
  std::vector<double> s;
  std::vector<Vec3> p;

  std::size_t size() const { return s.size(); }
};

/// Throws MalformedInput unless sizes match, s is strictly increasing and
/// there are at least `min_count` samples.
inline void check_samples(const CurveSamples& c, std::size_t min_count = 5) {
  if (c.s.size() != c.p.size()) throw MalformedInput("curve: s and p have different lengths");
  if (c.s.size() < min_count) {
    throw MalformedInput("curve: need at least " + std::to_string(min_count) + " samples, got " +
                         std::to_string(c.s.size()));
  }
  for (std::size_t i = 0; i + 1 < c.s.size(); ++i) {
    if (!(c.s[i + 1] > c.s[i])) {
      throw MalformedInput("curve: arc length not strictly increasing at sample " +
                           std::to_string(i + 1));
    }
  }
  for (std::size_t i = 0; i < c.p.size(); ++i) {
    if (!c.p[i].allFinite() || !std::isfinite(c.s[i])) {
      throw MalformedInput("curve: non-finite value at sample " + std::to_string(i));
    }
  }
}

inline constexpr double kDefaultSpeedTolerance = 1e-3;

struct SpeedReport {
  bool pass = false;
  double worst_relative_deviation = 0.0;
  std::size_t worst_segment = 0;
};

// Compares chord length with the claimed arc-length step on every segment.
inline SpeedReport validate_unit_speed(const CurveSamples& curve,
                                       double eps_speed = kDefaultSpeedTolerance) {
  check_samples(curve, 2);
  SpeedReport r;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const double ds = curve.s[i + 1] - curve.s[i];
    const double chord = (curve.p[i + 1] - curve.p[i]).norm();
    const double dev = std::abs(chord - ds) / ds;
    if (dev > r.worst_relative_deviation || i == 0) {
      r.worst_relative_deviation = dev;
      r.worst_segment = i;
    }
  }
  r.pass = r.worst_relative_deviation <= eps_speed;
  return r;
}

/// Uniform arc-length resampling through a natural cubic spline per
/// coordinate. Endpoints are reproduced exactly.
inline CurveSamples resample_arclength(const CurveSamples& curve, std::size_t n) {
  if (n < 5) throw InvalidArgument("resample: n must be at least 5, got " + std::to_string(n));
  check_samples(curve, 2);
  numerics::NaturalCubicSpline<Vec3> spline(curve.s, curve.p);
  CurveSamples out;
  out.s = numerics::linspace(curve.s.front(), curve.s.back(), n);
  out.p.reserve(n);
  for (double s : out.s) out.p.push_back(spline(s));
  out.p.front() = curve.p.front();
  out.p.back() = curve.p.back();
  return out;
}

/// Every stride-th sample, always keeping the last one only if it falls on
/// the stride (so a uniform grid stays uniform).
inline CurveSamples subsample(const CurveSamples& curve, std::size_t stride) {
  if (stride == 0) throw InvalidArgument("subsample: stride must be positive");
  CurveSamples out;
  for (std::size_t i = 0; i < curve.size(); i += stride) {
    out.s.push_back(curve.s[i]);
    out.p.push_back(curve.p[i]);
  }
  return out;
}

/// Thins a uniform grid finer than `spacing`. Cascaded finite differences
/// lose more to round-off than they gain in truncation error below ~1e-2.
inline CurveSamples decimate_to_spacing(const CurveSamples& curve, double spacing) {
  if (curve.size() < 2 || !numerics::is_uniform(curve.s)) return curve;
  const double h = (curve.s.back() - curve.s.front()) / static_cast<double>(curve.size() - 1);
  const auto stride = static_cast<std::size_t>(std::floor(spacing / h + 1e-9));
  if (stride <= 1 || curve.size() / stride < 16) return curve;
  return subsample(curve, stride);
}

// ---------------------------------------------------------------------------
// Intrinsic profiles

struct CurvatureTorsion {
  double kappa = 0.0;
  double tau = 0.0;
};

namespace family {

/// kappa, tau sampled at knots; linear in between.
struct Tabulated {
  std::vector<double> s;
  std::vector<double> kappa;
  std::vector<double> tau;
};

/// Helix of radius a and pitch 2*pi*b.
struct CircularHelix {
  double a = 1.0;
  double b = 0.0;
};

/// kappa = w sin(mu s), tau = w cos(mu s).
struct ConstantPrecession {
  double w = 1.0;
  double mu = 1.0;
};

/// f = c2 cos(mu s) - c1 sin(mu s), g = c1 cos(mu s) + c2 sin(mu s), and
/// kappa = f cos(theta), tau = f sin(theta) with
/// theta = theta0 + (c1/mu) sin(mu s) - (c2/mu) cos(mu s).
struct CConstantPrecession {
  double c1 = 0.0;
  double c2 = 1.0;
  double mu = 1.0;
  double theta0 = std::numbers::pi / 2;
};

}  // namespace family

using ProfileFamily = std::variant<family::Tabulated, family::CircularHelix,
                                   family::ConstantPrecession, family::CConstantPrecession>;

namespace detail {

// Maximal interval where f > 0 and theta stays in (-pi/2, pi/2), i.e.
// kappa > 0. With x = mu s + psi, f = delta cos x and theta = theta0 - f/mu.
inline Interval c_precession_domain(const family::CConstantPrecession& p) {
  const double delta = std::hypot(p.c1, p.c2);
  const double psi = std::atan2(p.c1, p.c2);
  const double half_pi = std::numbers::pi / 2;
  // Bounds on cos x from -pi/2 < theta0 - delta cos(x) / mu < pi/2.
  double lo_cos = p.mu * (p.theta0 - half_pi) / delta;
  double hi_cos = p.mu * (p.theta0 + half_pi) / delta;
  if (p.mu < 0) std::swap(lo_cos, hi_cos);
  lo_cos = std::max(lo_cos, 0.0);
  if (lo_cos >= hi_cos || lo_cos >= 1.0) {
    throw InvalidArgument("c-constant-precession: kappa is nowhere positive for theta0 = " +
                          std::to_string(p.theta0));
  }
  double x_lo;
  double x_hi;
  if (hi_cos >= 1.0) {
    x_lo = -std::acos(lo_cos);
    x_hi = std::acos(lo_cos);
  } else {
    // Two symmetric pieces; keep the one with x > 0.
    x_lo = std::acos(hi_cos);
    x_hi = std::acos(lo_cos);
  }
  double a = (x_lo - psi) / p.mu;
  double b = (x_hi - psi) / p.mu;
  if (a > b) std::swap(a, b);
  return {a, b};
}

}  // namespace detail

/// kappa(s), tau(s) given either by samples or by one of the closed-form
/// families. Construction validates parameters and fixes the domain.
class IntrinsicProfile {
 public:
  static IntrinsicProfile circular_helix(double a, double b) {
    if (!(a > 0) || !std::isfinite(b)) throw InvalidArgument("circular helix needs a > 0");
    return IntrinsicProfile(family::CircularHelix{a, b}, {-kInf, kInf});
  }

  static IntrinsicProfile constant_precession(double w, double mu) {
    if (!(w > 0)) throw InvalidArgument("constant precession needs w > 0");
    if (mu == 0 || !std::isfinite(mu)) throw InvalidArgument("constant precession needs mu != 0");
    const double end = std::numbers::pi / mu;
    return IntrinsicProfile(family::ConstantPrecession{w, mu},
                            mu > 0 ? Interval{0.0, end} : Interval{end, 0.0});
  }

  static IntrinsicProfile c_constant_precession(double c1, double c2, double mu,
                                                double theta0 = std::numbers::pi / 2) {
    if (mu == 0 || !std::isfinite(mu)) throw InvalidArgument("c-constant precession needs mu != 0");
    if (c1 == 0 && c2 == 0) throw InvalidArgument("c-constant precession needs (c1, c2) != (0, 0)");
    family::CConstantPrecession p{c1, c2, mu, theta0};
    return IntrinsicProfile(p, detail::c_precession_domain(p));
  }

  static IntrinsicProfile tabulated(std::vector<double> s, std::vector<double> kappa,
                                    std::vector<double> tau) {
    if (s.size() != kappa.size() || s.size() != tau.size()) {
      throw MalformedInput("profile: column lengths differ");
    }
    if (s.size() < 2) throw MalformedInput("profile: need at least 2 rows");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!std::isfinite(s[i]) || !std::isfinite(kappa[i]) || !std::isfinite(tau[i])) {
        throw MalformedInput("profile: non-finite value in row " + std::to_string(i + 1));
      }
      if (i > 0 && !(s[i] > s[i - 1])) {
        throw MalformedInput("profile: s not strictly increasing at row " + std::to_string(i + 1));
      }
      if (!(kappa[i] > 0)) {
        throw InvalidArgument("profile: kappa must be positive (row " + std::to_string(i + 1) + ")");
      }
    }
    Interval d{s.front(), s.back()};
    return IntrinsicProfile(family::Tabulated{std::move(s), std::move(kappa), std::move(tau)}, d);
  }

  const ProfileFamily& family() const { return family_; }
  Interval domain() const { return domain_; }
  bool is_tabulated() const { return std::holds_alternative<family::Tabulated>(family_); }

  bool contains(double s) const {
    return is_tabulated() ? domain_.contains_closed(s) : domain_.contains_open(s);
  }

  CurvatureTorsion eval(double s) const {
    if (!contains(s)) {
      throw DomainError("profile evaluated at s = " + std::to_string(s) + " outside (" +
                        std::to_string(domain_.lo) + ", " + std::to_string(domain_.hi) + ")");
    }
    return std::visit([s](const auto& p) { return eval_family(p, s); }, family_);
  }

  std::string name() const {
    return std::visit(
        [](const auto& p) -> std::string {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, family::Tabulated>) return "tabulated";
          else if constexpr (std::is_same_v<P, family::CircularHelix>) return "circular-helix";
          else if constexpr (std::is_same_v<P, family::ConstantPrecession>)
            return "constant-precession";
          else return "c-constant-precession";
        },
        family_);
  }

 private:
  IntrinsicProfile(ProfileFamily f, Interval d) : family_(std::move(f)), domain_(d) {}

  static CurvatureTorsion eval_family(const family::Tabulated& t, double s) {
    auto it = std::upper_bound(t.s.begin(), t.s.end(), s);
    std::size_t i = static_cast<std::size_t>(it - t.s.begin());
    i = std::clamp<std::size_t>(i, 1, t.s.size() - 1) - 1;
    if (s == t.s[i]) return {t.kappa[i], t.tau[i]};
    if (s == t.s[i + 1]) return {t.kappa[i + 1], t.tau[i + 1]};
    const double u = (s - t.s[i]) / (t.s[i + 1] - t.s[i]);
    return {t.kappa[i] + u * (t.kappa[i + 1] - t.kappa[i]),
            t.tau[i] + u * (t.tau[i + 1] - t.tau[i])};
  }
  static CurvatureTorsion eval_family(const family::CircularHelix& h, double) {
    const double r2 = h.a * h.a + h.b * h.b;
    return {h.a / r2, h.b / r2};
  }
  static CurvatureTorsion eval_family(const family::ConstantPrecession& c, double s) {
    return {c.w * std::sin(c.mu * s), c.w * std::cos(c.mu * s)};
  }
  static CurvatureTorsion eval_family(const family::CConstantPrecession& c, double s) {
    const double cs = std::cos(c.mu * s);
    const double sn = std::sin(c.mu * s);
    const double f = c.c2 * cs - c.c1 * sn;
    const double theta = c.theta0 + (c.c1 * sn - c.c2 * cs) / c.mu;
    return {f * std::cos(theta), f * std::sin(theta)};
  }

  ProfileFamily family_;
  Interval domain_;
};

inline CurvatureTorsion eval_profile(const IntrinsicProfile& profile, double s) {
  return profile.eval(s);
}

}  // namespace helix
