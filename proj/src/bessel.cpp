#include "weinstein/bessel.hpp"

#include <cmath>
#include <numbers>

#include "weinstein/error.hpp"

namespace weinstein {

BesselEvaluator::BesselEvaluator(double alpha, int series_cutoff, double switchover_argument)
    : alpha_(alpha), cutoff_(series_cutoff), switchover_(switchover_argument) {
  if (!std::isfinite(alpha) || !(alpha > -0.5)) {
    throw DomainError("alpha out of range: need alpha > -1/2, got " + std::to_string(alpha));
  }
  if (series_cutoff < 1) throw DomainError("series cutoff must be >= 1");
  if (!(switchover_argument > 0.0)) throw DomainError("switchover argument must be positive");
  lgamma_a1_ = std::lgamma(alpha + 1.0);
}

double BesselEvaluator::operator()(double x) const {
  const double ax = std::abs(x);
  if (ax <= switchover_) return series(ax);
  return scaled_cylinder(ax);
}

double BesselEvaluator::series(double x) const {
  // term_k = (-1)^k (x/2)^{2k} / (k! (a+1)_k)
  const double q = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < cutoff_; ++k) {
    term *= q / (static_cast<double>(k) * (alpha_ + static_cast<double>(k)));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && static_cast<double>(k) * k > 0.25 * x * x) break;
  }
  return sum;
}

double BesselEvaluator::scaled_cylinder(double x) const {
  x = std::abs(x);
  if (x == 0.0) return 1.0;
  double J;
  if (alpha_ >= 0.0) {
    J = std::cyl_bessel_j(alpha_, x);
  } else {
    const double nu = -alpha_;
    J = std::cos(nu * std::numbers::pi) * std::cyl_bessel_j(nu, x) -
        std::sin(nu * std::numbers::pi) * std::cyl_neumann(nu, x);
  }
  return J * std::exp(lgamma_a1_ - alpha_ * std::log(0.5 * x));
}

double bessel_j_normalized(const BesselEvaluator& be, double x) { return be(x); }

std::complex<double> weinstein_kernel(const WeinsteinParams& params, const BesselEvaluator& be,
                                      std::span<const double> lambda, std::span<const double> x) {
  const std::size_t d = static_cast<std::size_t>(params.d());
  if (lambda.size() != d + 1 || x.size() != d + 1) throw GridMismatch("kernel arguments need d + 1 coordinates");
  double phase = 0.0;
  for (std::size_t i = 0; i < d; ++i) phase += x[i] * lambda[i];
  return std::polar(be(x[d] * lambda[d]), -phase);
}

}  // namespace weinstein
