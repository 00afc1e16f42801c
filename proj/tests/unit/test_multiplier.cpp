#include <doctest.h>

#include <cmath>
#include <vector>

#include "common.hpp"
#include "weinstein/error.hpp"
#include "weinstein/multiplier.hpp"

using namespace wt;

namespace {

const SigmaGrid kSigma(1e-2, 1e2, 128);

MultiplierProfile bump(const TransformPlan& plan, const SigmaGrid& sg = kSigma,
                       AdmissibilityVariant v = AdmissibilityVariant::modulus_squared, double scale = 1.0) {
  return symbol_profile(SymbolFamily::gaussian_bump, plan.grid_out(), sg, v, scale);
}

/// c |y|^2 e^{-|y|^2/2}: smooth at the origin, admissibility integral c^2 / 2.
MultiplierProfile smooth_symbol(const TransformPlan& plan, double c) {
  Field m = Field::sample(plan.grid_out(), [c](std::span<const double> y) {
    double r2 = 0;
    for (double v : y) r2 += v * v;
    return cplx(c * r2 * std::exp(-r2 / 2), 0.0);
  });
  return MultiplierProfile(std::move(m), kSigma, AdmissibilityVariant::modulus_squared);
}

MultiplierProfile constant_symbol(const TransformPlan& plan, cplx c) {
  return MultiplierProfile(Field::constant(plan.grid_out(), c), kSigma, AdmissibilityVariant::modulus_squared);
}

}  // namespace

TEST_CASE("closed-form bump") {
  CHECK(gaussian_bump(0.0) == 0.0);
  CHECK(gaussian_bump(1.0) == doctest::Approx(std::sqrt(2.0) * std::exp(-0.5)).epsilon(1e-15));
}

TEST_CASE("symbol dilation") {
  const auto g = make_grid(1, 0.5, 8, 64, 8, 64);
  const TransformPlan plan(g);
  const auto m = bump(plan);
  CHECK(norm_p(dilate_symbol(m, 1.0) - m.symbol(), plan.weights_out(), INFINITY) == 0.0);
  CHECK_THROWS_AS(dilate_symbol(m, 0.0), DomainError);
  CHECK_THROWS_AS(dilate_symbol(m, -1.0), DomainError);

  const Field m2 = dilate_symbol(m, 2.0);
  const auto& fg = *plan.grid_out();
  for (std::size_t i = 0; i < fg.size(); i += 37) {
    const auto y = fg.point(i);
    CHECK(m2[i].real() == doctest::Approx(gaussian_bump(2.0 * std::hypot(y[0], y[1]))).epsilon(1e-14));
  }

  // sampled symbols go through cubic interpolation: fourth-order convergence
  const auto dilation_error = [](double L, std::size_t n, std::size_t nr, double s) {
    const TransformPlan p(make_grid(1, 0.5, L, n, 8, nr));
    const auto sm = smooth_symbol(p, std::sqrt(2.0));
    const Field exact = Field::sample(p.grid_out(), [s](std::span<const double> y) {
      double r2 = 0;
      for (double v : y) r2 += s * s * v * v;
      return cplx(std::sqrt(2.0) * r2 * std::exp(-r2 / 2), 0.0);
    });
    return rel_l2(dilate_symbol(sm, s), exact, p.weights_out());
  };
  for (double s : {0.8, 1.7}) {
    const double coarse = dilation_error(8, 64, 64, s), fine = dilation_error(16, 128, 128, s);
    INFO("s=" << s << " coarse=" << coarse << " fine=" << fine);
    CHECK(coarse <= 5e-3);
    CHECK(coarse / fine >= 10.0);
  }
  const auto sampled = smooth_symbol(plan, std::sqrt(2.0));

  // ||m_s||^2 = s^{-D} ||m||^2
  const double D = plan.params().homogeneity_degree();
  const auto& w = plan.weights_out();
  for (double s : {0.7, 1.5, 3.0}) {
    const double ratio = std::pow(norm_p(dilate_symbol(sampled, s), w, 2.0) / norm_p(sampled.symbol(), w, 2.0), 2);
    CHECK(ratio == doctest::Approx(std::pow(s, -D)).epsilon(1e-3));
  }
}

TEST_CASE("admissibility of the closed-form bump") {
  for (int d : {1, 2}) {
    const auto g = make_grid(d, 1.0, 8, 32, 8, 32);
    const TransformPlan plan(g);
    const auto r = admissibility_defect(bump(plan));
    INFO("d=" << d);
    CHECK(r.covered_count > 0);
    CHECK(r.max_defect <= 1e-8);
    CHECK(r.excluded_count == 0);

    const auto rm = admissibility_defect(bump(plan, kSigma, AdmissibilityVariant::modulus));
    CHECK(rm.max_in_range_defect > 0.5);

    const auto r0 = admissibility_defect(constant_symbol(plan, 0.0));
    for (std::size_t i = 0; i < r0.defect.size(); ++i) REQUIRE(r0.defect[i] == doctest::Approx(1.0));

    // d sigma / sigma is dilation invariant: m -> m_c leaves the defect unchanged
    const auto rc = admissibility_defect(bump(plan, kSigma, AdmissibilityVariant::modulus_squared, 1.7));
    double worst = 0;
    for (std::size_t i = 0; i < r.defect.size(); ++i) {
      if (r.covered[i] && rc.covered[i]) worst = std::max(worst, std::abs(r.defect[i] - rc.defect[i]));
    }
    CHECK(worst <= 1e-6);
  }
  CHECK_THROWS_AS(admissibility_defect(bump(TransformPlan(make_grid(1, 1.0, 8, 32, 8, 32))), 0.0), DomainError);
}

TEST_CASE("multiplier application") {
  const auto g = make_grid(1, 0.5, 10, 64, 10, 96);
  const TransformPlan plan(g);
  const Field phi = gaussian(g, 0.9);
  const auto& w = plan.weights_in();

  CHECK(rel_l2(apply_multiplier(plan, constant_symbol(plan, 1.0), 1.3, phi), phi, w) <= 1e-10);
  CHECK(norm_p(apply_multiplier(plan, constant_symbol(plan, 0.0), 1.3, phi), w, INFINITY) == 0.0);

  const auto m = bump(plan);
  Rng rng(4);
  const Field psi = Field::sample(g, [&](auto) { return cplx(rng.uniform(-1, 1), rng.uniform(-1, 1)); });
  const cplx a(0.3, -2.0), b(1.5, 0.5);
  const Field lin = apply_multiplier(plan, m, 0.7, phi * a + psi * b);
  const Field sep = apply_multiplier(plan, m, 0.7, phi) * a + apply_multiplier(plan, m, 0.7, psi) * b;
  CHECK(rel_l2(lin, sep, w) <= 1e-12);

  for (double s : {0.3, 1.0, 2.5}) {
    const double sup = norm_p(dilate_symbol(m, s), plan.weights_out(), INFINITY);
    CHECK(norm_p(apply_multiplier(plan, m, s, psi), w, 2.0) <= sup * norm_p(psi, w, 2.0) * (1 + 1e-10));
  }
  CHECK_THROWS_AS(apply_multiplier(plan, m, 0.0, phi), DomainError);
}

TEST_CASE("radial symbols preserve radial inputs") {
  const auto g = make_grid(2, 1.0, 8, 32, 8, 64);
  const TransformPlan plan(g);
  const auto m = bump(plan);
  const Field phi = Field::sample(g, [](std::span<const double> x) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    return cplx((1 + 0.5 * r2) * std::exp(-r2 / 2), 0.0);
  });
  const Field t = apply_multiplier(plan, m, 0.8, phi);
  // swap the two Euclidean axes and reflect the first
  const std::size_t n = 32, nr = g->radial_size();
  double worst = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < nr; ++k) {
        const cplx v = t[(i * n + j) * nr + k];
        worst = std::max(worst, std::abs(v - t[(j * n + i) * nr + k]));
        worst = std::max(worst, std::abs(v - t[((n - 1 - i) * n + j) * nr + k]));
      }
  CHECK(worst <= 1e-10);
}

TEST_CASE("multiplier Plancherel identity") {
  const auto g = make_grid(1, 0.5, 16, 128, 16, 128);
  const TransformPlan plan(g);
  const auto m = bump(plan);
  const Field phi = gaussian(g);
  const double d0 = multiplier_plancherel_defect(plan, m, phi);
  CHECK(d0 <= 1e-4);
  CHECK(multiplier_plancherel_defect(plan, m, phi * cplx(3.0, -1.0)) == doctest::Approx(d0).epsilon(1e-8));
  CHECK_THROWS_AS(multiplier_plancherel_defect(plan, m, Field::zeros(g)), DomainError);

  // a uniform admissibility defect delta shows up as a Plancherel defect of delta
  CHECK(multiplier_plancherel_defect(plan, smooth_symbol(plan, std::sqrt(2.0)), phi) <= 1e-4);
  const double delta = 0.05;
  const auto scaled = smooth_symbol(plan, std::sqrt(2.0 * (1 + delta)));
  // the sampled symbol is dilated by interpolation
  CHECK(admissibility_defect(scaled).max_defect == doctest::Approx(delta).epsilon(2e-2));
  CHECK(multiplier_plancherel_defect(plan, scaled, phi) == doctest::Approx(delta).epsilon(1e-2));
}

TEST_CASE("kernel representation") {
  for (double alpha : {0.5, 1.5}) {
    const auto g = make_grid(1, alpha, 5, 16, 5, 16);
    const TransformPlan plan(g);
    const auto m = bump(plan);
    const Field phi = gaussian(g, 0.9);
    INFO("alpha=" << alpha);
    for (double s : {0.5, 1.0, 2.0}) {
      CHECK(rel_l2(apply_multiplier_kernel(plan, m, s, phi), apply_multiplier(plan, m, s, phi), plan.weights_in()) <=
            1e-4);
    }
    const std::vector<double> x{0.3, 1.1}, y{-0.7, 0.4};
    CHECK(kernel_psi(plan, constant_symbol(plan, 0.0), 1.0, x, y) == cplx(0.0));

    Rng rng(77);
    for (int t = 0; t < 20; ++t) {
      std::vector<char> omega(g->size());
      for (auto& c : omega) c = rng.uniform(0, 1) < 0.3;
      const Field f = Field::sample(g, [&](auto) { return cplx(rng.uniform(-1, 1), rng.uniform(-1, 1)); });
      const double s = std::exp(rng.uniform(-1, 1));
      const auto kb = kernel_pointwise_bound(plan, m, s, f, omega);
      CHECK(kb.max_value <= kb.bound * (1 + 1e-10));
    }
  }
  const auto big = make_grid(1, 0.5, 5, 64, 5, 32);
  const TransformPlan plan(big);
  CHECK_THROWS_AS(apply_multiplier_kernel(plan, bump(plan), 1.0, gaussian(big)), NumericGuardError);
}

TEST_CASE("admissible profile construction") {
  const auto g = make_grid(1, 0.5, 8, 32, 8, 32);
  const TransformPlan plan(g);
  const auto m = make_admissible_radial(SymbolFamily::gaussian_bump, plan.grid_out(), kSigma);
  CHECK(m.variant() == AdmissibilityVariant::modulus_squared);
  CHECK(admissibility_defect(m).max_defect <= 1e-6);
  CHECK(m.symbol()[5].real() == doctest::Approx(gaussian_bump(std::hypot(plan.grid_out()->point(5)[0],
                                                                          plan.grid_out()->point(5)[1]))));
  CHECK_THROWS_AS(make_admissible_radial(SymbolFamily::gaussian_bump, plan.grid_out(), SigmaGrid(0.9, 1.1, 32)),
                  NumericGuardError);
  CHECK_THROWS_AS(make_admissible_radial(SymbolFamily::sampled, plan.grid_out(), kSigma), DomainError);
}
