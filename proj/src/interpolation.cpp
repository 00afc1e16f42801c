#include "weinstein/interpolation.hpp"

#include <cmath>

#include "weinstein/error.hpp"

namespace weinstein {

namespace {

void lagrange(double u, long start, std::size_t order, Stencil& out) {
  out.count = order;
  for (std::size_t i = 0; i < order; ++i) {
    const double ti = static_cast<double>(start + static_cast<long>(i));
    double w = 1.0;
    for (std::size_t j = 0; j < order; ++j) {
      if (j == i) continue;
      const double tj = static_cast<double>(start + static_cast<long>(j));
      w *= (u - tj) / (ti - tj);
    }
    out.weight[i] = w;
  }
}

}  // namespace

bool axis_stencil(const Axis& axis, double p, std::size_t order, Stencil& out) {
  const long n = static_cast<long>(axis.size());
  if (!std::isfinite(p) || p < axis.min() || p > axis.max()) {
    if (!(axis.is_radial() && p < 0.0 && -p <= axis.max())) return false;
    p = -p;
  }
  // fractional index of p
  const double u = (p - axis[0]) / axis.step();
  const double nearest = std::round(u);
  if (std::abs(u - nearest) <= 1e-10 && nearest >= 0.0 && nearest <= static_cast<double>(n - 1)) {
    out.count = 1;
    out.index[0] = static_cast<std::size_t>(nearest);
    out.weight[0] = 1.0;
    return true;
  }
  const long o = static_cast<long>(order);
  long start = static_cast<long>(std::floor(u)) - o / 2 + 1;
  if (start + o > n) start = n - o;
  if (!axis.is_radial() && start < 0) start = 0;
  lagrange(u, start, order, out);
  for (std::size_t i = 0; i < order; ++i) {
    long k = start + static_cast<long>(i);
    if (k < 0) k = -k - 1;  // even extension through 0 on the half-step radial grid
    out.index[i] = static_cast<std::size_t>(k);
  }
  return true;
}

FieldInterpolator::FieldInterpolator(const Field& f, std::size_t order) : field_(&f), order_(order) {
  if (order < 2 || order > kMaxStencil) throw DomainError("interpolation order must be in [2, 16]");
  const Grid& g = f.grid();
  for (const auto& a : g.euclid_axes()) {
    if (a.size() < order) throw DomainError("interpolation order exceeds axis size");
  }
  if (g.radial_size() < order) throw DomainError("interpolation order exceeds axis size");
  strides_.resize(g.euclid_axes().size());
  std::size_t s = g.radial_size();
  for (std::size_t a = strides_.size(); a-- > 0;) {
    strides_[a] = s;
    s *= g.euclid_axis(a).size();
  }
}

cplx FieldInterpolator::operator()(std::span<const double> p) const {
  const Grid& g = field_->grid();
  const std::size_t d = g.euclid_axes().size();
  if (p.size() != d + 1) throw GridMismatch("interpolation point needs d + 1 coordinates");
  std::vector<Stencil> st(d);
  for (std::size_t a = 0; a < d; ++a) {
    if (!axis_stencil(g.euclid_axis(a), p[a], order_, st[a])) return 0.0;
  }
  Stencil r;
  if (!axis_stencil(g.radial_axis(), p[d], order_, r)) return 0.0;
  return evaluate(st, r);
}

cplx FieldInterpolator::evaluate(std::span<const Stencil> euclid, const Stencil& radial) const {
  const auto values = field_->values();
  const std::size_t d = euclid.size();
  // odometer over the Euclidean stencil product
  std::array<std::size_t, 8> pos{};
  if (d > pos.size()) throw DomainError("interpolation supports at most 8 Euclidean axes");
  cplx acc = 0.0;
  while (true) {
    double w = 1.0;
    std::size_t base = 0;
    for (std::size_t a = 0; a < d; ++a) {
      w *= euclid[a].weight[pos[a]];
      base += euclid[a].index[pos[a]] * strides_[a];
    }
    if (w != 0.0) {
      double re = 0.0, im = 0.0;
      for (std::size_t i = 0; i < radial.count; ++i) {
        const cplx v = values[base + radial.index[i]];
        re += radial.weight[i] * v.real();
        im += radial.weight[i] * v.imag();
      }
      acc += w * cplx(re, im);
    }
    std::size_t a = d;
    while (a-- > 0) {
      if (++pos[a] < euclid[a].count) break;
      pos[a] = 0;
    }
    if (a == static_cast<std::size_t>(-1)) break;
  }
  return acc;
}

}  // namespace weinstein
