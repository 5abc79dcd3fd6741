#pragma once

#include <stdexcept>
#include <string>

namespace qkernel {

/// Base class for every numeric failure raised by the kernel.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A product or series hit a vanishing denominator.
class PoleError : public Error {
 public:
  explicit PoleError(const std::string& what) : Error("pole: " + what) {}
};

/// Arguments outside the domain of the operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("domain: " + what) {}
};

/// A truncation or refinement cap was reached before the tolerance was met.
class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what)
      : Error("convergence: " + what) {}
};

}  // namespace qkernel
