#pragma once

#include <stdexcept>
#include <string>

#include "slcert/point.hpp"

namespace slcert {

/// Point outside the declared domain C x D of a function (|p| >= 1).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A boundary parameter p that violates (1 - |p|^2)^2 >= eps, |p| < 1, p != 1.
class AdmissibilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Gradient vanished where a boundary normal is required.
class DegenerateBoundaryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied direction is not complex-tangent where tangency is required.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Non-finite function value inside a finite-difference stencil.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, PointC2 where)
      : std::runtime_error(what), point_(where) {}

  const PointC2& point() const noexcept { return point_; }

 private:
  PointC2 point_;
};

}  // namespace slcert
