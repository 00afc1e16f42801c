#include "weinstein/grid.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "weinstein/error.hpp"
#include "weinstein/kernels.hpp"

namespace weinstein {

std::string to_string(AxisScheme scheme) {
  switch (scheme) {
    case AxisScheme::centered: return "centered";
    case AxisScheme::offset: return "offset";
    case AxisScheme::offset_corrected: return "offset_corrected";
  }
  return "unknown";
}

AxisScheme axis_scheme_from_string(const std::string& name) {
  if (name == "centered") return AxisScheme::centered;
  if (name == "offset") return AxisScheme::offset;
  if (name == "offset_corrected") return AxisScheme::offset_corrected;
  throw DomainError("unknown axis scheme: " + name);
}

Axis::Axis(AxisScheme scheme, double step, double lo, double hi, std::size_t corrections,
           std::vector<double> points)
    : scheme_(scheme), step_(step), min_(lo), max_(hi), corrections_(corrections), points_(std::move(points)) {}

Axis Axis::euclidean(double half_width, std::size_t count) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw DomainError("euclidean extent must be positive and finite");
  }
  if (count < 2) throw DomainError("axis needs at least 2 points");
  const double h = 2.0 * half_width / static_cast<double>(count);
  const double c = 0.5 * static_cast<double>(count - 1);
  std::vector<double> pts(count);
  for (std::size_t j = 0; j < count; ++j) pts[j] = (static_cast<double>(j) - c) * h;
  return Axis(AxisScheme::centered, h, -half_width, half_width, 0, std::move(pts));
}

Axis Axis::radial(double extent, std::size_t count, AxisScheme scheme, std::size_t corrections) {
  if (scheme == AxisScheme::centered) throw DomainError("radial axis cannot use the centered scheme");
  if (!(extent > 0.0) || !std::isfinite(extent)) throw DomainError("radial extent must be positive and finite");
  if (count < 2) throw DomainError("axis needs at least 2 points");
  if (scheme == AxisScheme::offset) corrections = 0;
  if (corrections > count) throw DomainError("more endpoint corrections than radial points");
  const double h = extent / static_cast<double>(count);
  std::vector<double> pts(count);
  for (std::size_t k = 0; k < count; ++k) pts[k] = (static_cast<double>(k) + 0.5) * h;
  return Axis(scheme, h, 0.0, extent, corrections, std::move(pts));
}

Grid::Grid(WeinsteinParams params, std::vector<Axis> euclid, Axis radial)
    : params_(params), euclid_(std::move(euclid)), radial_(std::move(radial)) {
  if (euclid_.size() != static_cast<std::size_t>(params_.d())) {
    throw DomainError("grid needs one Euclidean axis per dimension");
  }
  for (const auto& a : euclid_) {
    if (a.is_radial()) throw DomainError("Euclidean axes must use the centered scheme");
  }
  if (!radial_.is_radial()) throw DomainError("last axis must be radial");
  euclid_size_ = 1;
  for (const auto& a : euclid_) euclid_size_ *= a.size();
  size_ = euclid_size_ * radial_.size();

  sq_norm_.assign(size_, 0.0);
  std::vector<double> p(euclid_.size() + 1);
  for (std::size_t i = 0; i < size_; ++i) {
    point(i, p);
    double s = 0.0;
    for (double v : p) s += v * v;
    sq_norm_[i] = s;
  }
}

std::vector<std::size_t> Grid::shape() const {
  std::vector<std::size_t> s;
  for (const auto& a : euclid_) s.push_back(a.size());
  s.push_back(radial_.size());
  return s;
}

std::vector<double> Grid::point(std::size_t flat) const {
  std::vector<double> p(euclid_.size() + 1);
  point(flat, p);
  return p;
}

void Grid::point(std::size_t flat, std::span<double> out) const {
  const std::size_t nr = radial_.size();
  out[euclid_.size()] = radial_[flat % nr];
  std::size_t rest = flat / nr;
  for (std::size_t a = euclid_.size(); a-- > 0;) {
    const std::size_t n = euclid_[a].size();
    out[a] = euclid_[a][rest % n];
    rest /= n;
  }
}

std::size_t Grid::reflect_index(std::size_t flat) const {
  const std::size_t nr = radial_.size();
  const std::size_t k = flat % nr;
  std::size_t rest = flat / nr;
  std::size_t out = 0;
  std::size_t stride = nr;
  for (std::size_t a = euclid_.size(); a-- > 0;) {
    const std::size_t n = euclid_[a].size();
    const std::size_t j = rest % n;
    rest /= n;
    out += (n - 1 - j) * stride;
    stride *= n;
  }
  return out + k;
}

bool Grid::contains(std::span<const double> x) const {
  if (x.size() != euclid_.size() + 1) return false;
  for (std::size_t a = 0; a < euclid_.size(); ++a) {
    if (x[a] < euclid_[a].min() || x[a] > euclid_[a].max()) return false;
  }
  const double r = x[euclid_.size()];
  return r >= radial_.min() && r <= radial_.max();
}

GridPtr build_grid(const WeinsteinParams& params, const GridSpec& spec) {
  if (spec.euclid.size() != static_cast<std::size_t>(params.d())) {
    throw DomainError("grid spec has " + std::to_string(spec.euclid.size()) + " Euclidean axes, d = " +
                      std::to_string(params.d()));
  }
  auto check = [](const AxisSpec& a, const char* what) {
    if (a.count < 8) throw DomainError(std::string(what) + " axis count must be >= 8");
    if (!(a.extent > 0.0) || !std::isfinite(a.extent)) {
      throw DomainError(std::string(what) + " axis extent must be positive");
    }
  };
  std::vector<Axis> axes;
  for (const auto& e : spec.euclid) {
    check(e, "euclidean");
    axes.push_back(Axis::euclidean(e.extent, e.count));
  }
  check(spec.radial, "radial");
  auto radial = Axis::radial(spec.radial.extent, spec.radial.count, spec.radial_scheme,
                             std::min(spec.radial_corrections, spec.radial.count));
  return std::make_shared<const Grid>(params, std::move(axes), std::move(radial));
}

bool same_grid(const Grid& a, const Grid& b) noexcept { return &a == &b || a == b; }

bool same_grid(const GridPtr& a, const GridPtr& b) noexcept {
  if (!a || !b) return a == b;
  return same_grid(*a, *b);
}

std::string to_string(Normalization n) {
  return n == Normalization::self_reciprocal ? "self_reciprocal" : "squared_gamma";
}

Normalization normalization_from_string(const std::string& name) {
  if (name == "self_reciprocal") return Normalization::self_reciprocal;
  if (name == "squared_gamma") return Normalization::squared_gamma;
  throw DomainError("unknown normalization: " + name);
}

double normalization_constant(const WeinsteinParams& params, Normalization n) {
  const double a = params.alpha();
  const double d = params.d();
  const double two_pi = 2.0 * std::numbers::pi;
  switch (n) {
    case Normalization::self_reciprocal: return std::pow(two_pi, 0.5 * d) * std::pow(2.0, a) * std::tgamma(a + 1.0);
    case Normalization::squared_gamma: {
      const double g = std::tgamma(a + 1.0);
      return std::pow(two_pi, d) * std::pow(2.0, 2.0 * a) * g * g;
    }
  }
  throw DomainError("unknown normalization");
}

namespace {

// zeta(-m, 1/2) for real m >= 0.
double hurwitz_zeta_half_negative(double m) {
  if (m == 0.0) return 0.0;
  return (std::pow(2.0, -m) - 1.0) * std::riemann_zeta(-m);
}

}  // namespace

std::vector<double> radial_density_weights(const Axis& radial, double alpha) {
  if (!radial.is_radial()) throw DomainError("radial_density_weights needs a radial axis");
  const std::size_t n = radial.size();
  const double h = radial.step();
  const double s = 2.0 * alpha + 1.0;
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) w[k] = h * std::pow(radial[k], s);

  const std::size_t J = radial.scheme() == AxisScheme::offset_corrected ? radial.corrections() : 0;
  if (J == 0) return w;

  // In units of h: sum_k c_k u_k^{2j} = -zeta(-(s + 2j), 1/2), u_k = k + 1/2,
  // and the weight correction is h^{s+1} c_k.
  Eigen::MatrixXd V(J, J);
  Eigen::VectorXd rhs(J);
  for (std::size_t j = 0; j < J; ++j) {
    for (std::size_t k = 0; k < J; ++k) V(j, k) = std::pow(static_cast<double>(k) + 0.5, 2.0 * j);
    rhs(j) = -hurwitz_zeta_half_negative(s + 2.0 * j);
  }
  const Eigen::VectorXd c = V.fullPivLu().solve(rhs);
  const double scale = std::pow(h, s + 1.0);
  for (std::size_t k = 0; k < J; ++k) w[k] += scale * c(k);
  return w;
}

WeightField::WeightField(GridPtr grid, double normalization_constant)
    : grid_(std::move(grid)), constant_(normalization_constant) {
  if (!grid_) throw DomainError("weight field needs a grid");
  if (!(constant_ > 0.0) || !std::isfinite(constant_)) throw DomainError("normalization constant must be positive");
  euclid_cell_ = 1.0;
  for (const auto& a : grid_->euclid_axes()) euclid_cell_ *= a.step();
  radial_ = radial_density_weights(grid_->radial_axis(), grid_->params().alpha());
  const std::size_t nr = radial_.size();
  weights_.resize(grid_->size());
  for (std::size_t i = 0; i < weights_.size(); ++i) weights_[i] = euclid_cell_ * radial_[i % nr] / constant_;
}

double WeightField::total_measure() const { return kernels::pairwise_sum(weights_); }

WeightField measure_weights(GridPtr grid, Normalization n) {
  if (!grid) throw DomainError("measure_weights needs a grid");
  const double c = normalization_constant(grid->params(), n);
  return WeightField(std::move(grid), c);
}

Field::Field(GridPtr grid, std::vector<cplx> values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw DomainError("field needs a grid");
  if (values_.size() != grid_->size()) throw GridMismatch("field length does not match grid size");
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("field sample is not finite");
  }
}

Field Field::zeros(GridPtr grid) { return constant(std::move(grid), cplx(0.0)); }

Field Field::constant(GridPtr grid, cplx value) {
  if (!grid) throw DomainError("field needs a grid");
  std::vector<cplx> v(grid->size(), value);
  return Field(std::move(grid), std::move(v));
}

Field Field::sample(GridPtr grid, const std::function<cplx(std::span<const double>)>& fn) {
  if (!grid) throw DomainError("field needs a grid");
  std::vector<cplx> v(grid->size());
  std::vector<double> p(grid->d() + 1);
  for (std::size_t i = 0; i < v.size(); ++i) {
    grid->point(i, p);
    v[i] = fn(p);
  }
  return Field(std::move(grid), std::move(v));
}

Field Field::operator+(const Field& other) const {
  require_same_grid(*grid_, *other.grid_, "field addition");
  std::vector<cplx> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += other.values_[i];
  return Field(grid_, std::move(v));
}

Field Field::operator-(const Field& other) const {
  require_same_grid(*grid_, *other.grid_, "field subtraction");
  std::vector<cplx> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= other.values_[i];
  return Field(grid_, std::move(v));
}

Field Field::operator*(cplx s) const {
  std::vector<cplx> v(values_);
  kernels::scale(v, s);
  return Field(grid_, std::move(v));
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!same_grid(a, b)) throw GridMismatch(std::string(what) + ": operands live on different grids");
}

double norm_p(const Field& f, const WeightField& w, double p) {
  require_same_grid(f.grid(), w.grid(), "norm_p");
  if (std::isinf(p) && p > 0) {
    double m = 0.0;
    for (const auto& v : f.values()) m = std::max(m, std::abs(v));
    return m;
  }
  if (!(p >= 1.0)) throw DomainError("norm exponent must be >= 1");
  if (p == 2.0) return std::sqrt(kernels::weighted_abs2_sum(w.weights(), f.values()));
  std::vector<double> a(f.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::pow(std::abs(f[i]), p);
  return std::pow(kernels::weighted_sum(w.weights(), a), 1.0 / p);
}

cplx inner_product(const Field& f, const Field& g, const WeightField& w) {
  require_same_grid(f.grid(), g.grid(), "inner_product");
  require_same_grid(f.grid(), w.grid(), "inner_product");
  return kernels::weighted_inner(w.weights(), f.values(), g.values());
}

}  // namespace weinstein
