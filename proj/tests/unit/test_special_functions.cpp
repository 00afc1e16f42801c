#include <doctest.h>

#include <cmath>
#include <vector>

#include "common.hpp"
#include "weinstein/bessel.hpp"
#include "weinstein/quadrature.hpp"

using namespace wt;

namespace {

struct Ref {
  double alpha, x, value;
};

// Gamma(a+1) J_a(x) / (x/2)^a at 40 digits (mpmath).
const Ref kReference[] = {
    {-0.3, 0.1, 0.9964311966686191035},      {-0.3, 1, 0.6683206841165643249},
    {-0.3, 3.5, -0.65271348066184870044},    {-0.3, 7.9, 0.15270359791748102342},
    {-0.3, 8.1, 0.043083258067174356113},    {-0.3, 15, -0.25300380401848331618},
    {-0.3, 30, -0.06870271539513930151},     {-0.3, 60, -0.37092150092447472554},
    {-0.3, 99, -0.09116948082447255067},     {0, 0.1, 0.99750156206604003228},
    {0, 1, 0.76519768655796655145},          {0, 3.5, -0.38012773998726337738},
    {0, 7.9, 0.19436184484127831756},        {0, 8.1, 0.14751745404437758233},
    {0, 15, -0.014224472826780773234},       {0, 30, -0.086367983581040211336},
    {0, 60, -0.091471804089061869531},       {0, 99, -0.05447423527049907344},
    {0.5, 0.1, 0.99833416646828152307},      {0.5, 1, 0.84147098480789650665},
    {0.5, 3.5, -0.10022377933989138518},     {0.5, 7.9, 0.12644827111895848561},
    {0.5, 8.1, 0.11973948282038101768},      {0.5, 15, 0.043352522677141124389},
    {0.5, 30, -0.032934387469762059666},     {0.5, 60, -0.0050801770183702784271},
    {0.5, 99, -0.010092998325114683782},     {1, 0.1, 0.99875052072483995113},
    {1, 1, 0.88010117148986703192},          {1, 3.5, 0.078501444207044106124},
    {1, 7.9, 0.055488455676392694704},       {1, 8.1, 0.061137720242368621774},
    {1, 15, 0.027347205148469701486},        {1, 30, -0.0079167375077748624347},
    {1, 60, 0.001553279458605543929},        {1, 99, -0.0011944028798600821624},
    {2, 0.1, 0.99916692703993507636},        {2, 1, 0.91922787945520384376},
    {2, 3.5, 0.29951293661669060147},        {2, 7.9, -0.017801427869237061094},
    {2, 8.1, -0.010532508313002159495},      {2, 15, 0.0014781041057866835456},
    {2, 30, 0.00069734440954013643468},      {2, 60, 0.00020672240788370536325},
    {2, 99, 0.000043489303043068251221},     {3.7, 0.1, 0.9994682017398786844},
    {3.7, 1, 0.94796059929963142619},        {3.7, 3.5, 0.49925338773782260372},
    {3.7, 7.9, -0.016028888422234761893},    {3.7, 8.1, -0.017972817580620975659},
    {3.7, 15, -0.0015691202612054353434},    {3.7, 30, 6.5099343287998421945e-6},
    {3.7, 60, -5.4176189273108669109e-6},    {3.7, 99, -1.3625500039744827757e-7},
};

}  // namespace

TEST_CASE("normalized Bessel function against high-precision reference") {
  for (const auto& r : kReference) {
    const BesselEvaluator be(r.alpha);
    const double v = bessel_j_normalized(be, r.x);
    INFO("alpha=" << r.alpha << " x=" << r.x);
    CHECK(std::abs(v - r.value) <= 1e-10 * std::abs(r.value));
    CHECK(bessel_j_normalized(be, -r.x) == v);
  }
}

TEST_CASE("closed forms and zeros") {
  const BesselEvaluator half(0.5);
  for (double x : {0.5, 1.0, 2.0, 5.0}) CHECK(half(x) == doctest::Approx(std::sin(x) / x).epsilon(1e-13));
  for (double a : {-0.4, 0.0, 0.5, 1.0, 7.5}) CHECK(BesselEvaluator(a)(0.0) == 1.0);
  // first positive zero of J_1
  CHECK(std::abs(BesselEvaluator(1.0)(3.8317059702075123156)) < 1e-14);
}

TEST_CASE("series and large-argument paths agree across the switchover") {
  for (double a : {-0.3, 0.0, 0.5, 1.0, 2.5}) {
    const BesselEvaluator be(a);
    for (double x : {6.0, 7.0, 8.0, 9.0}) {
      INFO("alpha=" << a << " x=" << x);
      CHECK(be.series(x) == doctest::Approx(be.scaled_cylinder(x)).epsilon(1e-11));
    }
  }
}

TEST_CASE("bound |j_alpha| <= 1 on a dense sweep") {
  for (double a : {-0.45, -0.2, 0.0, 0.5, 1.0, 3.0}) {
    const BesselEvaluator be(a);
    for (double x = 0.0; x <= 100.0; x += 0.013) CHECK(std::abs(be(x)) <= 1.0 + 1e-15);
  }
}

TEST_CASE("Weinstein kernel symmetries on randomized inputs") {
  Rng rng(2024);
  for (int d : {1, 2, 3}) {
    for (double alpha : {-0.3, 0.5, 1.0, 2.0}) {
      const WeinsteinParams p(d, alpha);
      const BesselEvaluator be(alpha);
      std::vector<double> lam(d + 1), x(d + 1), nlam(d + 1), nx(d + 1), zero(d + 1, 0.0);
      double worst_sym = 0, worst_refl = 0, worst_one = 0, worst_bound = 0;
      for (int t = 0; t < 10000; ++t) {
        for (int k = 0; k <= d; ++k) {
          lam[k] = rng.uniform(-10, 10);
          x[k] = rng.uniform(-10, 10);
        }
        nlam = lam;
        nx = x;
        for (int k = 0; k < d; ++k) {
          nlam[k] = -lam[k];
          nx[k] = -x[k];
        }
        const cplx v = weinstein_kernel(p, be, lam, x);
        worst_sym = std::max(worst_sym, std::abs(v - weinstein_kernel(p, be, x, lam)));
        worst_refl = std::max(worst_refl, std::abs(weinstein_kernel(p, be, lam, nx) - weinstein_kernel(p, be, nlam, x)));
        worst_one = std::max(worst_one, std::abs(weinstein_kernel(p, be, lam, zero) - 1.0));
        worst_bound = std::max(worst_bound, std::abs(v) - 1.0);
      }
      INFO("d=" << d << " alpha=" << alpha);
      CHECK(worst_sym <= 1e-12);
      CHECK(worst_refl <= 1e-12);
      CHECK(worst_one <= 1e-12);
      CHECK(worst_bound <= 1e-12);
    }
  }
}

TEST_CASE("Bessel ODE residual is second order in the step") {
  // u(r) = j_a(lambda r) solves u'' + (2a+1)/r u' = -lambda^2 u.
  for (double alpha : {-0.3, 0.5, 1.0, 2.0}) {
    const BesselEvaluator be(alpha);
    const double lam = 1.7;
    const auto residual = [&](double h) {
      double worst = 0.0;
      for (double r = 0.5; r <= 6.0; r += 0.25) {
        const double um = be(lam * (r - h)), u0 = be(lam * r), up = be(lam * (r + h));
        const double d2 = (up - 2 * u0 + um) / (h * h);
        const double d1 = (up - um) / (2 * h);
        worst = std::max(worst, std::abs(d2 + (2 * alpha + 1) / r * d1 + lam * lam * u0));
      }
      return worst;
    };
    const double e1 = residual(1e-2), e2 = residual(5e-3);
    INFO("alpha=" << alpha << " e1=" << e1 << " e2=" << e2);
    CHECK(e2 < 1e-3);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_CASE("Gauss-Jacobi rule integrates polynomials exactly") {
  for (double a : {-0.4, 0.0, 0.5, 1.5}) {
    const auto rule = gauss_jacobi(12, a, a);
    // int_{-1}^{1} t^2 (1-t^2)^a dt = B(3/2, a+1)
    double m0 = 0, m2 = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      m0 += rule.weights[i];
      m2 += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
    }
    const double b0 = std::sqrt(M_PI) * std::tgamma(a + 1) / std::tgamma(a + 1.5);
    const double b2 = std::tgamma(1.5) * std::tgamma(a + 1) / std::tgamma(a + 2.5);
    CHECK(m0 == doctest::Approx(b0).epsilon(1e-13));
    CHECK(m2 == doctest::Approx(b2).epsilon(1e-13));
  }
}
