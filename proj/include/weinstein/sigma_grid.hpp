#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "weinstein/grid.hpp"

namespace weinstein {

/// Log-spaced samples of [sigma_min, sigma_max] with trapezoid weights for
/// d sigma / sigma (trapezoid in log sigma).
class SigmaGrid {
 public:
  /// Throws DomainError unless 0 < min < max and count >= 2.
  SigmaGrid(double sigma_min, double sigma_max, std::size_t count);

  double min() const noexcept { return sigmas_.front(); }
  double max() const noexcept { return sigmas_.back(); }
  std::size_t size() const noexcept { return sigmas_.size(); }
  std::span<const double> sigmas() const noexcept { return sigmas_; }
  std::span<const double> log_weights() const noexcept { return log_weights_; }
  double operator[](std::size_t i) const noexcept { return sigmas_[i]; }
  /// log(max / min)
  double log_span() const noexcept { return log_span_; }

  /// Integral of sampled values over [min, max] against d sigma / sigma.
  double integrate(std::span<const double> values) const;

  /// In-range integral plus closures of the two tails. Beyond each end the
  /// samples are continued as power laws in sigma (geometric on the log grid)
  /// and the trapezoid sum is extended, with Aitken acceleration.
  struct TailClosure {
    double in_range = 0.0;
    double low_tail = 0.0;
    double high_tail = 0.0;
    bool finite = true;  ///< false when a non-negligible tail does not decay
    double total() const noexcept { return in_range + low_tail + high_tail; }
  };
  TailClosure integrate_with_tails(std::span<const double> values) const;

  friend bool operator==(const SigmaGrid& a, const SigmaGrid& b) { return a.sigmas_ == b.sigmas_; }

 private:
  std::vector<double> sigmas_;
  std::vector<double> log_weights_;
  double log_span_;
};

/// sum_s log_weight(s) sum_x w(x) values(s, x); values is sigma-major
/// (|sigmas| x grid size). Throws GridMismatch on a shape mismatch.
double theta_integral(std::span<const double> values, const SigmaGrid& sg, const WeightField& w);

}  // namespace weinstein
