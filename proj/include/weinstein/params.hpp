#pragma once

#include <cstddef>

namespace weinstein {

/// Dimension and Bessel index of the Weinstein operator on R^d x (0, inf).
class WeinsteinParams {
 public:
  /// Throws DomainError unless d >= 1 and alpha > -1/2.
  WeinsteinParams(int d, double alpha);

  int d() const noexcept { return d_; }
  double alpha() const noexcept { return alpha_; }
  /// Scaling exponent 2*alpha + d + 2 of the measure under dilation.
  double homogeneity_degree() const noexcept { return degree_; }

  friend bool operator==(const WeinsteinParams&, const WeinsteinParams&) = default;

 private:
  int d_;
  double alpha_;
  double degree_;
};

}  // namespace weinstein
