#pragma once

#include "helix/curve_model.hpp"
#include "helix/types.hpp"

#include <Eigen/Geometry>

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace helix::test {

// Arc-length parameterized helix of radius a and pitch 2 pi b about e_z.
inline Vec3 helix_point(double a, double b, double s) {
  const double c = std::sqrt(a * a + b * b);
  return {a * std::cos(s / c), a * std::sin(s / c), b * s / c};
}

inline CurveSamples sample_helix(double a, double b, double lo, double hi, std::size_t n) {
  CurveSamples c;
  c.s = numerics::linspace(lo, hi, n);
  for (double s : c.s) c.p.push_back(helix_point(a, b, s));
  return c;
}

inline CurveSamples sample_circle(std::size_t n, double turns = 1.0) {
  return sample_helix(1.0, 0.0, 0.0, turns * 2.0 * std::acos(-1.0), n);
}

inline double max_abs_diff(const std::vector<double>& v, double target) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x - target));
  return m;
}

// Seeded generator for the hand-rolled property tests.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }

  Vec3 unit_vector() {
    std::normal_distribution<double> n;
    Vec3 v(n(gen_), n(gen_), n(gen_));
    return v.normalized();
  }

  Mat3 rotation() {
    const Eigen::AngleAxisd aa(uniform(-3.0, 3.0), unit_vector());
    return aa.toRotationMatrix();
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

// Unique scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("helix_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace helix::test
