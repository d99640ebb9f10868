#pragma once

#include <stdexcept>
#include <string>

namespace helix {

// Base of every error thrown by the library. Callers that only care about
// "the analysis could not be performed" catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data has the wrong shape (row counts, ordering, headers).
class MalformedInput : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Evaluation point or span lies outside a profile's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The Frenet (or alternative) frame is undefined on every sample.
class DegenerateCurve : public Error {
 public:
  DegenerateCurve(const std::string& what, double kappa_estimate = 0.0)
      : Error(what), kappa_estimate_(kappa_estimate) {}
  double kappa_estimate() const noexcept { return kappa_estimate_; }

 private:
  double kappa_estimate_;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

// (g/f)' vanishes, so the C-slant axis formula is undefined.
class DegenerateAxis : public Error {
 public:
  using Error::Error;
};

// (g/f)' vanishes identically: the input is a slant helix and the
// tan(phi) criterion is undefined.
class SlantHelixDegenerate : public Error {
 public:
  using Error::Error;
};

class NoPrecessionAxis : public Error {
 public:
  NoPrecessionAxis(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// A spherical curve must be parameterized by its own arc length.
class ReparameterizeFirst : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace helix
