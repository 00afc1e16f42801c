#pragma once

#include <complex>
#include <span>

#include "weinstein/params.hpp"

namespace weinstein {

/// Normalized Bessel function j_a(x) = Gamma(a + 1) J_a(x) / (x/2)^a.
/// Power series up to the switchover argument, scaled std::cyl_bessel_j above.
class BesselEvaluator {
 public:
  /// Throws DomainError unless alpha > -1/2, cutoff >= 1 and switchover > 0.
  explicit BesselEvaluator(double alpha, int series_cutoff = 200, double switchover_argument = 8.0);

  double alpha() const noexcept { return alpha_; }
  int series_cutoff() const noexcept { return cutoff_; }
  double switchover_argument() const noexcept { return switchover_; }

  double operator()(double x) const;
  /// Truncated power series, any x (loses accuracy for large |x|).
  double series(double x) const;
  /// Scaled cylinder-function path, x != 0.
  double scaled_cylinder(double x) const;

 private:
  double alpha_;
  int cutoff_;
  double switchover_;
  double lgamma_a1_;
};

double bessel_j_normalized(const BesselEvaluator& be, double x);

/// e^{-i <x', lambda'>} j_a(x_{d+1} lambda_{d+1}); both points have d + 1
/// coordinates.
std::complex<double> weinstein_kernel(const WeinsteinParams& params, const BesselEvaluator& be,
                                      std::span<const double> lambda, std::span<const double> x);

}  // namespace weinstein
