#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace qkernel {

/// Neumaier-compensated running sum; the order of additions fixes the result.
template <typename Real>
class CompensatedSum {
 public:
  using Complex = std::complex<Real>;

  void add(const Complex& x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  CompensatedSum& operator+=(const Complex& x) {
    add(x);
    return *this;
  }
  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  struct Part {
    Real sum = 0;
    Real carry = 0;
    void add(Real x) {
      const Real t = sum + x;
      if (std::abs(sum) >= std::abs(x))
        carry += (sum - t) + x;
      else
        carry += (x - t) + sum;
      sum = t;
    }
    Real value() const { return sum + carry; }
  };
  Part re_, im_;
};

/// Pairwise (cascade) summation with a fixed split, so the result does not
/// depend on how the samples were produced.
template <typename T>
T pairwise_sum(std::span<const T> xs) {
  if (xs.empty()) return T(0);
  if (xs.size() <= 8) {
    T acc = xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i) acc += xs[i];
    return acc;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace qkernel
