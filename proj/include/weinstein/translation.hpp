#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "weinstein/grid.hpp"
#include "weinstein/transform.hpp"

namespace weinstein {

/// Quadrature in t = cos(theta) for c_a (sin theta)^{2a} d theta on [0, pi].
/// Weights include c_a = Gamma(a + 1) / (sqrt(pi) Gamma(a + 1/2)).
class TranslationRule {
 public:
  explicit TranslationRule(double alpha, std::size_t nodes = 64);

  double alpha() const noexcept { return alpha_; }
  double c_alpha() const noexcept { return c_alpha_; }
  std::size_t size() const noexcept { return cos_nodes_.size(); }
  std::span<const double> cos_nodes() const noexcept { return cos_nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  /// Sum of the weights; 1 up to rounding.
  double total_weight() const;

 private:
  double alpha_;
  double c_alpha_;
  std::vector<double> cos_nodes_;
  std::vector<double> weights_;
};

/// tau_x f(y) = c_a int_0^pi f(x' + y', sqrt(x_r^2 + y_r^2 + 2 x_r y_r cos theta)) sin^{2a} theta d theta
/// at every grid point y, with off-grid values interpolated (zero outside the
/// box). Throws DomainError when x lies outside the grid box.
Field translate_direct(const TranslationRule& rule, const Field& f, std::span<const double> x,
                       std::size_t interp_order = 8);

/// Spectral route: inverse(Lambda(-x, .) forward(f)).
Field translate_spectral(const TransformPlan& plan, const Field& f, std::span<const double> x);

/// The multiplier Lambda(-x, lambda) applied by translate_spectral, sampled on
/// the frequency grid.
Field translation_symbol(const TransformPlan& plan, std::span<const double> x);

/// f *_W g = inverse(forward(f) forward(g)).
Field convolve(const TransformPlan& plan, const Field& f, const Field& g);

/// Brute-force double sum (f *_W g)(x) = sum_y w(y) tau_x f(-y) g(y), one
/// direct translation per output point. Small grids only.
Field convolve_direct(const TranslationRule& rule, const WeightField& w, const Field& f, const Field& g,
                      std::size_t interp_order = 8);

}  // namespace weinstein
