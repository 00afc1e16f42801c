#pragma once

#include <cstddef>
#include <memory>

#include "weinstein/bessel.hpp"
#include "weinstein/grid.hpp"
#include "weinstein/kernels.hpp"

namespace weinstein {

enum class TransformMethod { fast_separable, direct_quadrature };

std::string to_string(TransformMethod m);

/// Frequency grid conjugate to `spatial`: each Euclidean axis (L, N) maps to
/// (pi N / (2L), N), so the spacings multiply to 2 pi / N; the radial axis is
/// copied. Applying it twice returns the original sampling.
GridPtr frequency_grid(const GridPtr& spatial);

/// Dense size guard for direct quadrature: |grid_in| * |grid_out| <= this.
inline constexpr std::size_t kDirectQuadratureLimit = std::size_t{1} << 28;

/// Dense weighted sum F(l) = sum_x w(x) f(x) Lambda(l, x) over every output
/// point. Throws NumericGuardError when the pair count exceeds the limit.
Field direct_quadrature(const WeightField& w_in, const GridPtr& grid_out, const Field& f,
                        std::size_t limit = kDirectQuadratureLimit);

/// Cached forward/inverse transform between a spatial grid and its conjugate
/// frequency grid.
class TransformPlan {
 public:
  explicit TransformPlan(GridPtr grid_in, Normalization n = Normalization::self_reciprocal,
                         TransformMethod method = TransformMethod::fast_separable);
  ~TransformPlan();
  TransformPlan(const TransformPlan&) = delete;
  TransformPlan& operator=(const TransformPlan&) = delete;

  const GridPtr& grid_in() const noexcept { return grid_in_; }
  const GridPtr& grid_out() const noexcept { return grid_out_; }
  const WeightField& weights_in() const noexcept { return w_in_; }
  const WeightField& weights_out() const noexcept { return w_out_; }
  const WeinsteinParams& params() const noexcept { return grid_in_->params(); }
  TransformMethod method() const noexcept { return method_; }
  Normalization normalization() const noexcept { return normalization_; }
  const BesselEvaluator& bessel() const noexcept { return bessel_; }
  /// Radial factor of the forward map, j_a(l_k r_l) times the radial weight and
  /// the scalar measure factor.
  const kernels::DupMatrix& radial_kernel() const noexcept { return forward_radial_; }

  /// Input must live on grid_in.
  Field forward(const Field& f) const;
  /// Input must live on grid_out; output lives on grid_in.
  Field inverse(const Field& F) const;

  /// Forward map from the frequency grid back to the spatial grid without the
  /// final reflection (inverse = reflect(this)).
  Field forward_from_output(const Field& F) const;

 private:
  struct Fft;
  std::vector<cplx> apply(const Field& f, const kernels::DupMatrix& radial) const;
  Field apply_direct(const Field& f, bool from_output) const;

  GridPtr grid_in_;
  GridPtr grid_out_;
  Normalization normalization_;
  TransformMethod method_;
  WeightField w_in_;
  WeightField w_out_;
  BesselEvaluator bessel_;
  kernels::DupMatrix forward_radial_;
  kernels::DupMatrix backward_radial_;
  std::unique_ptr<Fft> fft_;
};

Field forward(const TransformPlan& plan, const Field& f);
Field inverse(const TransformPlan& plan, const Field& F);

/// Field with values at reflected points -x = (-x', x_{d+1}).
Field reflect(const Field& f);

}  // namespace weinstein
