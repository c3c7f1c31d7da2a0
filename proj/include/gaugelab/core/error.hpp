#pragma once

#include <stdexcept>
#include <string>

#include "gaugelab/core/vec3.hpp"

namespace gaugelab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument does not hold (mismatched grids, unknown
/// catalog name, out-of-range index, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A field was evaluated outside its declared validity box.
class DomainError : public Error {
 public:
  DomainError(const std::string& field, const Vec3& r);
  const Vec3& where() const noexcept { return where_; }

 private:
  Vec3 where_;
};

/// An iterative method stopped before meeting its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, int iterations, double residual);
  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

/// A line/segment quadrature did not settle below its tolerance.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, const Vec3& r, double last_difference);
  const Vec3& where() const noexcept { return where_; }
  double last_difference() const noexcept { return last_difference_; }

 private:
  Vec3 where_;
  double last_difference_;
};

}  // namespace gaugelab
