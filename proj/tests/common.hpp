#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

#include "weinstein/grid.hpp"
#include "weinstein/harness.hpp"
#include "weinstein/transform.hpp"

namespace wt {

using namespace weinstein;

inline GridSpec cube_spec(int d, double L, std::size_t n, double R, std::size_t nr) {
  GridSpec s;
  s.euclid.assign(static_cast<std::size_t>(d), AxisSpec{L, n});
  s.radial = {R, nr};
  return s;
}

inline GridPtr make_grid(int d, double alpha, double L, std::size_t n, double R, std::size_t nr) {
  return build_grid(WeinsteinParams(d, alpha), cube_spec(d, L, n, R, nr));
}

/// exp(-|x|^2 / (2 s^2))
inline Field gaussian(const GridPtr& g, double s = 1.0) {
  const double k = 0.5 / (s * s);
  return Field::sample(g, [k](std::span<const double> x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return cplx(std::exp(-k * r2), 0.0);
  });
}

inline double rel_l2(const Field& a, const Field& b, const WeightField& w) {
  return norm_p(a - b, w, 2.0) / norm_p(b, w, 2.0);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * harness::uniform01(g_()); }

 private:
  std::mt19937_64 g_;
};

}  // namespace wt
