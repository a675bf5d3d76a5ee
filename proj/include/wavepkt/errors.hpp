#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace wavepkt {

/// Base class for every physics or validation failure raised by the library.
class PhysicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input lies outside the domain of the requested quantity.
class DomainError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

/// The closed form exists only for a subset of configurations (e.g. C = 0).
class UnsupportedConfiguration : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

/// A grid cannot resolve the field or kernel it is asked to carry.
class ResolutionError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

/// A grid cuts off a measurable part of a packet.
class TruncationError : public PhysicsError {
 public:
  TruncationError(const std::string& what, double lost_mass)
      : PhysicsError(what), lost_mass_(lost_mass) {}
  double lost_mass() const noexcept { return lost_mass_; }

 private:
  double lost_mass_;
};

/// The kernel of the free propagator is singular at t = 0.
class SingularKernel : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

/// A bracketing minimizer ended on the edge of its search interval.
class BracketError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

/// Sampled data does not follow the model it is being fitted against.
class ModelMismatch : public PhysicsError {
 public:
  ModelMismatch(const std::string& what, double residual)
      : PhysicsError(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

namespace detail {

template <typename Scalar>
void require_positive(Scalar value, const char* name) {
  using std::isfinite;
  if (!(value > Scalar(0)) || !isfinite(value))
    throw DomainError(std::string(name) + " must be positive and finite");
}

template <typename Scalar>
void require_nonnegative(Scalar value, const char* name) {
  using std::isfinite;
  if (!(value >= Scalar(0)) || !isfinite(value))
    throw DomainError(std::string(name) + " must be non-negative and finite");
}

template <typename Scalar>
void require_finite(Scalar value, const char* name) {
  using std::isfinite;
  if (!isfinite(value)) throw DomainError(std::string(name) + " must be finite");
}

}  // namespace detail
}  // namespace wavepkt
