#include "weinstein/regions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "weinstein/error.hpp"
#include "weinstein/kernels.hpp"

namespace weinstein {

Region::Region(const WeightField& w, std::vector<char> mask) : grid_(w.grid_ptr()), mask_(std::move(mask)) {
  if (mask_.size() != grid_->size()) throw GridMismatch("region mask does not match the grid");
  std::vector<double> ind(mask_.size());
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    ind[i] = mask_[i] ? 1.0 : 0.0;
    count_ += mask_[i] ? 1 : 0;
  }
  measure_ = kernels::weighted_sum(w.weights(), ind);
}

Region Region::all(const WeightField& w) { return Region(w, std::vector<char>(w.grid().size(), 1)); }
Region Region::empty(const WeightField& w) { return Region(w, std::vector<char>(w.grid().size(), 0)); }

Region Region::ball(const WeightField& w, std::span<const double> center, double radius) {
  const Grid& g = w.grid();
  if (center.size() != static_cast<std::size_t>(g.d()) + 1) throw GridMismatch("ball center needs d + 1 coordinates");
  if (!(radius >= 0.0)) throw DomainError("ball radius must be nonnegative");
  std::vector<char> mask(g.size());
  std::vector<double> p(center.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.point(i, p);
    double s = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) s += (p[k] - center[k]) * (p[k] - center[k]);
    mask[i] = s <= radius * radius ? 1 : 0;
  }
  Region r(w, std::move(mask));
  r.radius_ = radius;
  return r;
}

Region Region::mass_ball(const Field& f, const WeightField& w, double q) {
  require_same_grid(f.grid(), w.grid(), "mass_ball");
  if (!(q > 0.0) || !(q <= 1.0)) throw DomainError("mass fraction must lie in (0, 1]");
  const Grid& g = f.grid();
  const auto r2 = g.squared_norms();
  std::vector<std::size_t> order(g.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return r2[a] < r2[b]; });
  double total = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) total += w[i] * std::norm(f[i]);
  if (!(total > 0.0)) throw DomainError("mass_ball needs a nonzero field");
  double acc = 0.0;
  double radius2 = r2[order.back()];
  for (std::size_t k = 0; k < order.size(); ++k) {
    acc += w[order[k]] * std::norm(f[order[k]]);
    if (acc >= q * total) {
      radius2 = r2[order[k]];
      break;
    }
  }
  std::vector<char> mask(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) mask[i] = r2[i] <= radius2 ? 1 : 0;
  Region r(w, std::move(mask));
  r.radius_ = std::sqrt(radius2);
  return r;
}

SigmaRegion::SigmaRegion(const SigmaGrid& sg, const WeightField& w, std::vector<char> mask)
    : sigmas_(sg.sigmas().begin(), sg.sigmas().end()),
      log_weights_(sg.log_weights().begin(), sg.log_weights().end()),
      weights_(w.weights().begin(), w.weights().end()),
      points_(w.weights().size()),
      mask_(std::move(mask)) {
  if (mask_.size() != sigmas_.size() * points_) throw GridMismatch("sigma-region mask is not |sigmas| x grid size");
  for (std::size_t s = 0; s < sigmas_.size(); ++s) {
    double inner = 0.0;
    for (std::size_t i = 0; i < points_; ++i) {
      if (mask_[s * points_ + i]) inner += weights_[i];
    }
    theta_measure_ += log_weights_[s] * inner;
  }
}

SigmaRegion SigmaRegion::sigma_at_least(const SigmaGrid& sg, const WeightField& w, double rho, const Region& box) {
  if (!(rho > 0.0)) throw DomainError("sigma threshold must be positive");
  const std::size_t n = w.weights().size();
  if (box.mask().size() != n) throw GridMismatch("box region does not match the grid");
  std::vector<char> mask(sg.size() * n, 0);
  for (std::size_t s = 0; s < sg.size(); ++s) {
    if (sg[s] < rho) continue;
    std::copy(box.mask().begin(), box.mask().end(), mask.begin() + static_cast<std::ptrdiff_t>(s * n));
  }
  return SigmaRegion(sg, w, std::move(mask));
}

SigmaRegion SigmaRegion::all(const SigmaGrid& sg, const WeightField& w) {
  return SigmaRegion(sg, w, std::vector<char>(sg.size() * w.weights().size(), 1));
}

SigmaRegion SigmaRegion::empty(const SigmaGrid& sg, const WeightField& w) {
  return SigmaRegion(sg, w, std::vector<char>(sg.size() * w.weights().size(), 0));
}

bool SigmaRegion::touches_sigma_min() const noexcept {
  return std::any_of(mask_.begin(), mask_.begin() + static_cast<std::ptrdiff_t>(points_), [](char c) { return c != 0; });
}

bool SigmaRegion::is_empty() const noexcept {
  return std::none_of(mask_.begin(), mask_.end(), [](char c) { return c != 0; });
}

double SigmaRegion::smallest_sigma() const {
  for (std::size_t s = 0; s < sigmas_.size(); ++s) {
    for (std::size_t i = 0; i < points_; ++i) {
      if (mask_[s * points_ + i]) return sigmas_[s];
    }
  }
  throw DomainError("sigma region is empty");
}

double SigmaRegion::inverse_power_integral(double D) const {
  if (touches_sigma_min()) throw NumericGuardError("sigma-region reaches integrability boundary");
  double total = 0.0;
  for (std::size_t s = 0; s < sigmas_.size(); ++s) {
    double inner = 0.0;
    for (std::size_t i = 0; i < points_; ++i) {
      if (mask_[s * points_ + i]) inner += weights_[i];
    }
    total += log_weights_[s] * std::pow(sigmas_[s], -2.0 * D) * inner;
  }
  return total;
}

}  // namespace weinstein
