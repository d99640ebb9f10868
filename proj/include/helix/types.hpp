#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <vector>

namespace helix {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Real interval [lo, hi]. Whether the endpoints belong to it is decided by
// the owner (profile domains are open, tabulated domains closed).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains_open(double x) const { return x > lo && x < hi; }
  bool contains_closed(double x) const { return x >= lo && x <= hi; }
};

// Shrinks an open domain by three sample spacings at each finite end.
inline Interval guard_band(Interval d, double spacing) {
  const double band = 3.0 * spacing;
  if (std::isfinite(d.lo)) d.lo += band;
  if (std::isfinite(d.hi)) d.hi -= band;
  return d;
}

// Orthonormal Frenet triple; rows of the rotation taking the frame to world.
struct Frame {
  Vec3 T = Vec3::UnitX();
  Vec3 N = Vec3::UnitY();
  Vec3 B = Vec3::UnitZ();
};

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const Vec3& v) { return v.allFinite(); }

template <class T>
T nan_value();
template <>
inline double nan_value<double>() {
  return kNaN;
}
template <>
inline Vec3 nan_value<Vec3>() {
  return Vec3::Constant(kNaN);
}

template <class T>
T zero_value();
template <>
inline double zero_value<double>() {
  return 0.0;
}
template <>
inline Vec3 zero_value<Vec3>() {
  return Vec3::Zero();
}

}  // namespace helix
