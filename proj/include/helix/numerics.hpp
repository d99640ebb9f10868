#pragma once

// Grid numerics shared by every analysis stage: finite differences on
// uniform runs, cumulative quadrature, natural cubic splines.

#include "helix/errors.hpp"
#include "helix/types.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace helix::numerics {

inline constexpr std::size_t kStencilWidth = 5;

// n points from lo to hi with both endpoints exact.
inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

inline bool is_uniform(std::span<const double> s, double rel_tol = 1e-9) {
  if (s.size() < 3) return true;
  const double h = (s.back() - s.front()) / static_cast<double>(s.size() - 1);
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (std::abs((s[i + 1] - s[i]) - h) > rel_tol * std::abs(h) + 1e-15) return false;
  }
  return true;
}

// First derivative on a uniform grid: 4th-order central stencil inside,
// 4th-order one-sided stencils on the two outermost points of each end.
template <class T>
std::vector<T> diff_uniform(std::span<const T> v, double h) {
  const std::size_t n = v.size();
  if (n < kStencilWidth) {
    throw InsufficientData("finite difference needs at least 5 samples, got " + std::to_string(n));
  }
  std::vector<T> d(n);
  const double c = 1.0 / (12.0 * h);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    d[i] = (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) * c;
  }
  d[0] = (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]) * c;
  d[1] = (-3.0 * v[0] - 10.0 * v[1] + 18.0 * v[2] - 6.0 * v[3] + v[4]) * c;
  d[n - 1] = (25.0 * v[n - 1] - 48.0 * v[n - 2] + 36.0 * v[n - 3] - 16.0 * v[n - 4] +
              3.0 * v[n - 5]) *
             c;
  d[n - 2] = (3.0 * v[n - 1] + 10.0 * v[n - 2] - 18.0 * v[n - 3] + 6.0 * v[n - 4] - v[n - 5]) *
             c;
  return d;
}

// Maximal runs [begin, end) of samples with no gap. A gap is a step larger
// than 1.5x the smallest step, which is what dropping samples from a uniform
// grid leaves behind.
inline std::vector<std::pair<std::size_t, std::size_t>> contiguous_runs(std::span<const double> s) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  if (s.empty()) return runs;
  double h_min = kInf;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) h_min = std::min(h_min, s[i + 1] - s[i]);
  std::size_t begin = 0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i + 1] - s[i] > 1.5 * h_min) {
      runs.emplace_back(begin, i + 1);
      begin = i + 1;
    }
  }
  runs.emplace_back(begin, s.size());
  return runs;
}

// Samples at each run end that a one-sided stencil produced.
inline constexpr std::size_t kOneSidedEdge = 2;

// d v / d s on a grid that is uniform up to gaps. Runs shorter than the
// stencil yield NaN. With `edge_trim` > 0 the outermost samples of each run
// are set to NaN as well; callers differentiating data that is itself a
// numerical derivative pass kOneSidedEdge, since one-sided errors compound
// across cascaded differences.
template <class T>
std::vector<T> diff(std::span<const double> s, std::span<const T> v, std::size_t edge_trim = 0) {
  if (s.size() != v.size()) throw InvalidArgument("diff: size mismatch");
  std::vector<T> out(v.size(), nan_value<T>());
  for (auto [b, e] : contiguous_runs(s)) {
    const std::size_t len = e - b;
    if (len < kStencilWidth || len <= 2 * edge_trim) continue;
    const double h = (s[e - 1] - s[b]) / static_cast<double>(len - 1);
    auto d = diff_uniform<T>(v.subspan(b, len), h);
    std::copy(d.begin() + static_cast<std::ptrdiff_t>(edge_trim),
              d.end() - static_cast<std::ptrdiff_t>(edge_trim),
              out.begin() + static_cast<std::ptrdiff_t>(b + edge_trim));
  }
  return out;
}

template <class T>
std::vector<T> diff(const std::vector<double>& s, const std::vector<T>& v,
                    std::size_t edge_trim = 0) {
  return diff<T>(std::span<const double>(s), std::span<const T>(v), edge_trim);
}

// First-derivative weights at x0 for the nodes x (Fornberg's recursion).
inline std::array<double, kStencilWidth> first_derivative_weights(
    double x0, const std::array<double, kStencilWidth>& x) {
  constexpr std::size_t n = kStencilWidth;
  double c[n][2] = {};
  c[0][0] = 1.0;
  double c1 = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    double c2 = 1.0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        c[i][1] = c1 * (c[i - 1][0] - (x[i - 1] - x0) * c[i - 1][1]) / c2;
        c[i][0] = -c1 * (x[i - 1] - x0) * c[i - 1][0] / c2;
      }
      c[j][1] = ((x[i] - x0) * c[j][1] - c[j][0]) / c3;
      c[j][0] = (x[i] - x0) * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::array<double, n> w{};
  for (std::size_t i = 0; i < n; ++i) w[i] = c[i][1];
  return w;
}

// Five-point derivative on an arbitrary increasing grid: centered where
// possible, shifted stencils at the ends. No spline is involved, so end
// behaviour matches the uniform case.
template <class T>
std::vector<T> diff_nonuniform(std::span<const double> s, std::span<const T> v,
                               std::size_t edge_trim = 0) {
  if (s.size() != v.size()) throw InvalidArgument("diff_nonuniform: size mismatch");
  const std::size_t n = s.size();
  std::vector<T> out(n, nan_value<T>());
  if (n < kStencilWidth || n <= 2 * edge_trim) return out;
  for (std::size_t i = edge_trim; i < n - edge_trim; ++i) {
    const std::size_t first = std::min(i >= 2 ? i - 2 : 0, n - kStencilWidth);
    std::array<double, kStencilWidth> x{};
    for (std::size_t k = 0; k < kStencilWidth; ++k) x[k] = s[first + k];
    const auto w = first_derivative_weights(s[i], x);
    T acc = zero_value<T>();
    for (std::size_t k = 0; k < kStencilWidth; ++k) acc = acc + w[k] * v[first + k];
    out[i] = acc;
  }
  return out;
}

template <class T>
std::vector<T> diff_nonuniform(const std::vector<double>& s, const std::vector<T>& v,
                               std::size_t edge_trim = 0) {
  return diff_nonuniform<T>(std::span<const double>(s), std::span<const T>(v), edge_trim);
}

// Cumulative integral with value 0 at s[0]. Composite Simpson on each run
// (odd points closed with the three-point half-interval rule), trapezoid
// across gaps.
template <class T>
std::vector<T> cumulative_integral(std::span<const double> s, std::span<const T> v) {
  if (s.size() != v.size()) throw InvalidArgument("cumulative_integral: size mismatch");
  std::vector<T> out(v.size(), zero_value<T>());
  if (v.empty()) return out;
  T offset = zero_value<T>();
  std::size_t prev_end = 0;
  for (auto [b, e] : contiguous_runs(s)) {
    if (b > 0) offset = out[prev_end - 1] + 0.5 * (s[b] - s[b - 1]) * (v[b] + v[b - 1]);
    const std::size_t len = e - b;
    out[b] = offset;
    if (len == 2) {
      out[b + 1] = offset + 0.5 * (s[b + 1] - s[b]) * (v[b] + v[b + 1]);
    } else if (len >= 3) {
      const double h = (s[e - 1] - s[b]) / static_cast<double>(len - 1);
      for (std::size_t k = 2; k < len; k += 2) {
        const std::size_t i = b + k;
        out[i] = out[i - 2] + (h / 3.0) * (v[i - 2] + 4.0 * v[i - 1] + v[i]);
      }
      // Odd nodes: one interval past the previous even node, with a
      // cubic-exact four-point rule where four points exist.
      for (std::size_t k = 1; k < len; k += 2) {
        const std::size_t i = b + k;
        T step;
        if (len == 3) {
          if (k == 1) step = (h / 12.0) * (5.0 * v[i - 1] + 8.0 * v[i] - v[i + 1]);
          else step = (h / 12.0) * (-v[i - 2] + 8.0 * v[i - 1] + 5.0 * v[i]);
        } else if (k == 1) {
          step = (h / 24.0) * (9.0 * v[i - 1] + 19.0 * v[i] - 5.0 * v[i + 1] + v[i + 2]);
        } else if (k + 1 < len) {
          step = (h / 24.0) * (-v[i - 2] + 13.0 * v[i - 1] + 13.0 * v[i] - v[i + 1]);
        } else {
          step = (h / 24.0) * (v[i - 3] - 5.0 * v[i - 2] + 19.0 * v[i - 1] + 9.0 * v[i]);
        }
        out[i] = out[i - 1] + step;
      }
    }
    prev_end = e;
  }
  return out;
}

template <class T>
std::vector<T> cumulative_integral(const std::vector<double>& s, const std::vector<T>& v) {
  return cumulative_integral<T>(std::span<const double>(s), std::span<const T>(v));
}

// Natural cubic spline through (x_i, y_i); y may be scalar or Vec3.
template <class T>
class NaturalCubicSpline {
 public:
  NaturalCubicSpline(std::vector<double> x, std::vector<T> y) : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw InvalidArgument("spline needs matching knots (>= 2)");
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!(x_[i + 1] > x_[i])) throw InvalidArgument("spline knots must be strictly increasing");
    }
    m_.assign(n, zero_value<T>());
    if (n < 3) return;
    // Thomas algorithm on the interior second-derivative system.
    const std::size_t k = n - 2;
    std::vector<double> diag(k), upper(k);
    std::vector<T> rhs(k);
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t i = j + 1;
      const double h0 = x_[i] - x_[i - 1];
      const double h1 = x_[i + 1] - x_[i];
      diag[j] = 2.0 * (h0 + h1);
      upper[j] = h1;
      rhs[j] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
    }
    for (std::size_t j = 1; j < k; ++j) {
      const double lower = x_[j + 1] - x_[j];
      const double w = lower / diag[j - 1];
      diag[j] -= w * upper[j - 1];
      rhs[j] = rhs[j] - w * rhs[j - 1];
    }
    m_[k] = rhs[k - 1] / diag[k - 1];
    for (std::size_t j = k - 1; j-- > 0;) {
      m_[j + 1] = (rhs[j] - upper[j] * m_[j + 2]) / diag[j];
    }
  }

  T operator()(double x) const {
    const std::size_t n = x_.size();
    std::size_t i = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin());
    i = std::clamp<std::size_t>(i, 1, n - 1) - 1;
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h;
    const double b = 1.0 - a;
    return a * y_[i] + b * y_[i + 1] +
           ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * (h * h / 6.0);
  }

  const std::vector<double>& knots() const { return x_; }

 private:
  std::vector<double> x_;
  std::vector<T> y_;
  std::vector<T> m_;
};

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;
};

inline MeanStd mean_std(std::span<const double> v) {
  MeanStd r;
  if (v.empty()) return r;
  double sum = 0.0;
  for (double x : v) sum += x;
  r.mean = sum / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - r.mean) * (x - r.mean);
  r.stddev = std::sqrt(ss / static_cast<double>(v.size()));
  return r;
}

inline double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Positions of each element of `sub` inside `super`; both sorted, and every
// element of `sub` is an exact copy of one in `super`.
inline std::vector<std::size_t> match_indices(std::span<const double> super,
                                              std::span<const double> sub) {
  std::vector<std::size_t> idx;
  idx.reserve(sub.size());
  auto it = super.begin();
  for (double x : sub) {
    it = std::lower_bound(it, super.end(), x);
    if (it == super.end() || *it != x) {
      throw InvalidArgument("sample sets do not share a common grid");
    }
    idx.push_back(static_cast<std::size_t>(it - super.begin()));
  }
  return idx;
}

}  // namespace helix::numerics
