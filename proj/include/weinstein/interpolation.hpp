#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "weinstein/grid.hpp"

namespace weinstein {

inline constexpr std::size_t kMaxStencil = 16;

/// Lagrange weights over consecutive samples of one axis.
struct Stencil {
  std::size_t count = 0;
  std::array<std::size_t, kMaxStencil> index{};
  std::array<double, kMaxStencil> weight{};
};

/// Fills `out` for evaluation at coordinate p and returns false when p lies
/// outside the axis box. Radial axes are extended evenly through 0; stencils
/// near the far edges are shifted inward. A p within 1e-10 steps of a node
/// yields that single node.
bool axis_stencil(const Axis& axis, double p, std::size_t order, Stencil& out);

/// Tensor-product Lagrange interpolation of a Field; zero outside the grid box.
class FieldInterpolator {
 public:
  /// Throws DomainError unless 2 <= order <= kMaxStencil and order <= every
  /// axis size.
  explicit FieldInterpolator(const Field& f, std::size_t order = 8);

  std::size_t order() const noexcept { return order_; }
  cplx operator()(std::span<const double> p) const;
  /// Evaluation from precomputed stencils (Euclidean axes in order, then radial).
  cplx evaluate(std::span<const Stencil> euclid, const Stencil& radial) const;

 private:
  const Field* field_;
  std::size_t order_;
  std::vector<std::size_t> strides_;
};

}  // namespace weinstein
