#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "weinstein/params.hpp"

namespace weinstein {

using cplx = std::complex<double>;

/// Sampling rule of one axis.
///   centered          symmetric Euclidean axis, x_j = (j - (N-1)/2) h, h = 2L/N
///   offset            radial axis, x_k = (k + 1/2) h, h = R/N, midpoint weights
///   offset_corrected  as offset, plus endpoint corrections on the first weights
enum class AxisScheme { centered, offset, offset_corrected };

std::string to_string(AxisScheme scheme);
AxisScheme axis_scheme_from_string(const std::string& name);

class Axis {
 public:
  static Axis euclidean(double half_width, std::size_t count);
  /// `corrections` is ignored unless scheme == offset_corrected.
  static Axis radial(double extent, std::size_t count, AxisScheme scheme = AxisScheme::offset_corrected,
                     std::size_t corrections = 8);

  AxisScheme scheme() const noexcept { return scheme_; }
  bool is_radial() const noexcept { return scheme_ != AxisScheme::centered; }
  std::size_t size() const noexcept { return points_.size(); }
  double step() const noexcept { return step_; }
  /// Box bounds: [-L, L] for Euclidean axes, [0, R] for the radial axis.
  double min() const noexcept { return min_; }
  double max() const noexcept { return max_; }
  std::size_t corrections() const noexcept { return corrections_; }
  std::span<const double> points() const noexcept { return points_; }
  double operator[](std::size_t i) const noexcept { return points_[i]; }

  friend bool operator==(const Axis& a, const Axis& b) {
    return a.scheme_ == b.scheme_ && a.step_ == b.step_ && a.min_ == b.min_ && a.max_ == b.max_ &&
           a.corrections_ == b.corrections_ && a.points_ == b.points_;
  }

 private:
  Axis(AxisScheme scheme, double step, double lo, double hi, std::size_t corrections,
       std::vector<double> points);

  AxisScheme scheme_;
  double step_;
  double min_;
  double max_;
  std::size_t corrections_;
  std::vector<double> points_;
};

struct AxisSpec {
  double extent = 0.0;  ///< half-width L for Euclidean axes, R for the radial axis
  std::size_t count = 0;
};

struct GridSpec {
  std::vector<AxisSpec> euclid;  ///< one entry per Euclidean coordinate
  AxisSpec radial;
  AxisScheme radial_scheme = AxisScheme::offset_corrected;
  std::size_t radial_corrections = 8;
};

/// Tensor-product sampling of R^d x (0, inf). Flat index is row-major over
/// (x_1, ..., x_d, x_{d+1}); the radial coordinate varies fastest.
class Grid {
 public:
  Grid(WeinsteinParams params, std::vector<Axis> euclid, Axis radial);

  const WeinsteinParams& params() const noexcept { return params_; }
  int d() const noexcept { return params_.d(); }
  const Axis& euclid_axis(std::size_t i) const { return euclid_.at(i); }
  const std::vector<Axis>& euclid_axes() const noexcept { return euclid_; }
  const Axis& radial_axis() const noexcept { return radial_; }

  std::size_t size() const noexcept { return size_; }
  std::size_t euclid_size() const noexcept { return euclid_size_; }
  std::size_t radial_size() const noexcept { return radial_.size(); }
  /// Point counts per axis, radial last.
  std::vector<std::size_t> shape() const;

  /// Coordinates of a grid point (d + 1 values).
  std::vector<double> point(std::size_t flat) const;
  void point(std::size_t flat, std::span<double> out) const;
  /// |x|^2 for every grid point.
  std::span<const double> squared_norms() const noexcept { return sq_norm_; }
  /// Flat index of the reflected point -x = (-x', x_{d+1}).
  std::size_t reflect_index(std::size_t flat) const;
  /// Whether the point lies in the closed box spanned by the axes.
  bool contains(std::span<const double> x) const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.params_ == b.params_ && a.euclid_ == b.euclid_ && a.radial_ == b.radial_;
  }

 private:
  WeinsteinParams params_;
  std::vector<Axis> euclid_;
  Axis radial_;
  std::size_t euclid_size_;
  std::size_t size_;
  std::vector<double> sq_norm_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Throws DomainError on counts < 8, nonpositive extents, or a spec whose
/// Euclidean axis count differs from params.d().
GridPtr build_grid(const WeinsteinParams& params, const GridSpec& spec);

/// True when both pointers refer to grids with identical sampling.
bool same_grid(const Grid& a, const Grid& b) noexcept;
bool same_grid(const GridPtr& a, const GridPtr& b) noexcept;

enum class Normalization { self_reciprocal, squared_gamma };

std::string to_string(Normalization n);
Normalization normalization_from_string(const std::string& name);

/// Constant C dividing x_{d+1}^{2 alpha + 1} dx in the measure.
///   self_reciprocal: (2 pi)^{d/2} 2^alpha Gamma(alpha + 1)
///   squared_gamma:   (2 pi)^d 2^{2 alpha} Gamma(alpha + 1)^2
double normalization_constant(const WeinsteinParams& params, Normalization n);

/// Quadrature weights realizing d mu_alpha on a grid. Separable: the weight of
/// a point is prod_j h_j * radial_weight(k) / C.
class WeightField {
 public:
  WeightField(GridPtr grid, double normalization_constant);

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  double normalization_constant() const noexcept { return constant_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double operator[](std::size_t i) const noexcept { return weights_[i]; }
  /// Radial factor without the normalization constant.
  std::span<const double> radial_weights() const noexcept { return radial_; }
  /// Product of the Euclidean steps.
  double euclid_cell() const noexcept { return euclid_cell_; }
  /// Quadrature estimate of mu_alpha(box).
  double total_measure() const;

 private:
  GridPtr grid_;
  double constant_;
  double euclid_cell_;
  std::vector<double> radial_;
  std::vector<double> weights_;
};

WeightField measure_weights(GridPtr grid, Normalization n = Normalization::self_reciprocal);

/// Radial quadrature factor for the density x^{2 alpha + 1} on one radial axis
/// (no normalization constant).
std::vector<double> radial_density_weights(const Axis& radial, double alpha);

/// Complex samples on a grid. Values are finite by construction.
class Field {
 public:
  Field(GridPtr grid, std::vector<cplx> values);

  static Field zeros(GridPtr grid);
  static Field constant(GridPtr grid, cplx value);
  static Field sample(GridPtr grid, const std::function<cplx(std::span<const double>)>& fn);

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const cplx> values() const noexcept { return values_; }
  cplx operator[](std::size_t i) const noexcept { return values_[i]; }

  /// Moves the samples out, leaving the field empty.
  std::vector<cplx> release() && { return std::move(values_); }

  Field operator+(const Field& other) const;
  Field operator-(const Field& other) const;
  Field operator*(cplx scale) const;

 private:
  GridPtr grid_;
  std::vector<cplx> values_;
};

/// Throws GridMismatch unless both live on the same grid.
void require_same_grid(const Grid& a, const Grid& b, const char* what);

/// ||f||_{alpha,p}; p = inf gives max |f|. Throws DomainError for p < 1.
double norm_p(const Field& f, const WeightField& w, double p);
/// sum_x w(x) f(x) conj(g(x)).
cplx inner_product(const Field& f, const Field& g, const WeightField& w);

}  // namespace weinstein
