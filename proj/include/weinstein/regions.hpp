#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "weinstein/grid.hpp"
#include "weinstein/sigma_grid.hpp"

namespace weinstein {

/// Subset of grid points with its mu_alpha measure.
class Region {
 public:
  Region(const WeightField& w, std::vector<char> mask);

  static Region all(const WeightField& w);
  static Region empty(const WeightField& w);
  /// Points with |x - center| <= radius.
  static Region ball(const WeightField& w, std::span<const double> center, double radius);
  /// Smallest centered ball holding at least fraction q of the |f|^2 mass.
  static Region mass_ball(const Field& f, const WeightField& w, double q);

  const GridPtr& grid_ptr() const noexcept { return grid_; }
  std::span<const char> mask() const noexcept { return mask_; }
  bool contains(std::size_t i) const noexcept { return mask_[i] != 0; }
  double measure() const noexcept { return measure_; }
  std::size_t count() const noexcept { return count_; }
  /// Radius of the ball this region was built from, 0 otherwise.
  double radius() const noexcept { return radius_; }

 private:
  GridPtr grid_;
  std::vector<char> mask_;
  double measure_ = 0.0;
  std::size_t count_ = 0;
  double radius_ = 0.0;
};

/// Subset of (sigma, x) pairs, sigma-major, with its Theta_alpha measure.
class SigmaRegion {
 public:
  SigmaRegion(const SigmaGrid& sg, const WeightField& w, std::vector<char> mask);

  /// {sigma >= rho} x box.
  static SigmaRegion sigma_at_least(const SigmaGrid& sg, const WeightField& w, double rho, const Region& box);
  static SigmaRegion all(const SigmaGrid& sg, const WeightField& w);
  static SigmaRegion empty(const SigmaGrid& sg, const WeightField& w);

  std::span<const char> mask() const noexcept { return mask_; }
  bool contains(std::size_t s, std::size_t i) const noexcept { return mask_[s * points_ + i] != 0; }
  std::size_t points() const noexcept { return points_; }
  std::size_t sigma_count() const noexcept { return sigmas_.size(); }
  /// Theta_alpha(Sigma) by the in-range quadrature.
  double theta_measure() const noexcept { return theta_measure_; }
  bool touches_sigma_min() const noexcept;
  bool is_empty() const noexcept;
  /// Smallest sigma present in the region; throws DomainError when empty.
  double smallest_sigma() const;
  /// sum over Sigma of sigma^{-2D} dTheta. Throws NumericGuardError when the
  /// region reaches sigma_min, where the integrand is not integrable.
  double inverse_power_integral(double D) const;

 private:
  std::vector<double> sigmas_;
  std::vector<double> log_weights_;
  std::vector<double> weights_;
  std::size_t points_;
  std::vector<char> mask_;
  double theta_measure_ = 0.0;
};

}  // namespace weinstein
