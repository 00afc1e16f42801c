#include "weinstein/sigma_grid.hpp"

#include <algorithm>
#include <cmath>

#include "weinstein/error.hpp"
#include "weinstein/kernels.hpp"

namespace weinstein {

SigmaGrid::SigmaGrid(double sigma_min, double sigma_max, std::size_t count) {
  if (!(sigma_min > 0.0) || !(sigma_max > sigma_min) || !std::isfinite(sigma_max)) {
    throw DomainError("sigma grid needs 0 < sigma_min < sigma_max");
  }
  if (count < 2) throw DomainError("sigma grid needs at least 2 points");
  const double lo = std::log(sigma_min);
  log_span_ = std::log(sigma_max) - lo;
  const double step = log_span_ / static_cast<double>(count - 1);
  sigmas_.resize(count);
  log_weights_.assign(count, step);
  for (std::size_t i = 0; i < count; ++i) sigmas_[i] = std::exp(lo + step * static_cast<double>(i));
  sigmas_.front() = sigma_min;
  sigmas_.back() = sigma_max;
  log_weights_.front() = 0.5 * step;
  log_weights_.back() = 0.5 * step;
}

double SigmaGrid::integrate(std::span<const double> values) const {
  if (values.size() != size()) throw GridMismatch("sigma samples do not match the sigma grid");
  return kernels::weighted_sum(log_weights_, values);
}

namespace {

constexpr double kNegligible = 1e-14;
constexpr double kMinDecay = 1e-3;

// Trapezoid mass beyond one end of the range, including the missing half of
// the end sample. `v` runs from the end inward. The sum beyond sample j is
// continued geometrically, Q_j = h v_0/2 + h v_j/(z_j - 1) - h sum_{k<j} v_k,
// and Q_0, Q_1, Q_2 are Aitken-accelerated. Returns false when the samples do
// not decay outward.
bool tail_mass(const std::vector<double>& v, double h, double floor, double& tail) {
  tail = 0.0;
  if (std::abs(v[0]) <= floor) return true;
  const std::size_t terms = std::min<std::size_t>(3, v.size() - 1);
  double q[3] = {0.0, 0.0, 0.0};
  double inner = 0.0;
  for (std::size_t j = 0; j < terms; ++j) {
    if (!(v[j] > 0.0) || !(v[j + 1] > 0.0)) return false;
    const double z = v[j + 1] / v[j];
    if (!(std::log(z) / h > kMinDecay)) return false;
    q[j] = 0.5 * h * v[0] + h * v[j] / (z - 1.0) - inner;
    inner += h * v[j];
  }
  tail = q[0];
  if (terms < 3) return true;
  const double den = q[2] - 2.0 * q[1] + q[0];
  const double step = q[1] - q[0];
  if (den == 0.0) return true;
  const double corr = step * step / den;
  if (std::abs(corr) <= 10.0 * std::abs(step)) tail = q[0] - corr;
  return true;
}

}  // namespace

SigmaGrid::TailClosure SigmaGrid::integrate_with_tails(std::span<const double> values) const {
  TailClosure out;
  out.in_range = integrate(values);
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return out;
  const double floor = kNegligible * peak;
  const double h = log_span_ / static_cast<double>(size() - 1);
  std::vector<double> low(values.begin(), values.end());
  std::vector<double> high(values.rbegin(), values.rend());
  out.finite = tail_mass(low, h, floor, out.low_tail) && tail_mass(high, h, floor, out.high_tail);
  return out;
}

double theta_integral(std::span<const double> values, const SigmaGrid& sg, const WeightField& w) {
  const std::size_t m = w.weights().size();
  if (values.size() != sg.size() * m) throw GridMismatch("theta_integral: values are not |sigmas| x grid size");
  std::vector<double> inner(sg.size());
  for (std::size_t s = 0; s < sg.size(); ++s) inner[s] = kernels::weighted_sum(w.weights(), values.subspan(s * m, m));
  return sg.integrate(inner);
}

}  // namespace weinstein
