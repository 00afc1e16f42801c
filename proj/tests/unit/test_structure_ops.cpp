#include <doctest.h>

#include <cmath>
#include <vector>

#include "common.hpp"
#include "weinstein/bessel.hpp"
#include "weinstein/error.hpp"
#include "weinstein/translation.hpp"

using namespace wt;

namespace {

Field product(const Field& a, const Field& b) {
  std::vector<cplx> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] * b[i];
  return Field(a.grid_ptr(), std::move(v));
}

/// Positive, rapidly decaying field, even and smooth in the radial variable.
Field positive_bump(const GridPtr& g, Rng& rng) {
  const auto d = static_cast<std::size_t>(g->d());
  std::vector<double> c(d);
  for (auto& v : c) v = rng.uniform(-0.5, 0.5);
  const double s = rng.uniform(0.65, 0.9), amp = rng.uniform(0.5, 2.0), a = rng.uniform(0, 1);
  return Field::sample(g, [=](std::span<const double> x) {
    const double r2 = x[d] * x[d];
    double q = r2;
    for (std::size_t k = 0; k < d; ++k) q += (x[k] - c[k]) * (x[k] - c[k]);
    return cplx(amp * (1 + a * r2) * std::exp(-q / (2 * s * s)), 0.0);
  });
}

}  // namespace

TEST_CASE("translation rule is a probability density") {
  for (double a : {-0.3, 0.0, 0.5, 1.0, 2.0, 5.0}) {
    const TranslationRule rule(a);
    CHECK(rule.size() == 64);
    CHECK(std::abs(rule.total_weight() - 1.0) <= 1e-10);
    CHECK(rule.c_alpha() == doctest::Approx(std::tgamma(a + 1) / (std::sqrt(M_PI) * std::tgamma(a + 0.5))));
  }
}

TEST_CASE("translation by the origin is the identity") {
  const auto g = make_grid(1, 1.0, 10, 64, 10, 128);
  const TransformPlan plan(g);
  const Field f = gaussian(g, 0.9);
  const std::vector<double> zero{0.0, 0.0};
  const Field sym = translation_symbol(plan, zero);
  for (std::size_t l = 0; l < sym.size(); ++l) REQUIRE(sym[l] == cplx(1.0));
  CHECK(norm_p(translate_spectral(plan, f, zero) - plan.inverse(plan.forward(f)), plan.weights_in(), INFINITY) == 0.0);
  CHECK(norm_p(translate_spectral(plan, f, zero) - f, plan.weights_in(), INFINITY) <= 1e-10);
  CHECK(norm_p(translate_direct(TranslationRule(1.0), f, zero) - f, plan.weights_in(), INFINITY) <= 1e-12);
}

TEST_CASE("spectral translation multiplies the transform by Lambda(-x, .)") {
  for (double alpha : {0.5, 2.0}) {
    const auto g = make_grid(2, alpha, 10, 64, 10, 128);
    const TransformPlan plan(g);
    const Field f = gaussian(g, 0.8);
    const std::vector<double> x{0.7, -0.4, 1.1};
    const Field lhs = plan.forward(translate_spectral(plan, f, x));
    const Field rhs = product(translation_symbol(plan, x), plan.forward(f));
    CHECK(norm_p(lhs - rhs, plan.weights_out(), INFINITY) <= 1e-10);

    const BesselEvaluator be(alpha);
    const Field sym = translation_symbol(plan, x);
    const std::vector<double> nx{-0.7, 0.4, 1.1};
    double worst = 0;
    for (std::size_t l = 0; l < sym.size(); l += 97)
      worst = std::max(worst, std::abs(sym[l] - weinstein_kernel(g->params(), be, nx, plan.grid_out()->point(l))));
    CHECK(worst <= 1e-14);
  }
}

TEST_CASE("direct and spectral translation agree") {
  for (int d : {1, 2}) {
    for (double alpha : {0.5, 1.0}) {
      const std::size_t n = d == 1 ? 96 : 64;
      const auto g = make_grid(d, alpha, 10, n, 10, 96);
      const TransformPlan plan(g);
      const TranslationRule rule(alpha);
      const Field f = gaussian(g);
      std::vector<double> x(static_cast<std::size_t>(d + 1), 0.3);
      x[static_cast<std::size_t>(d)] = 0.8;
      INFO("d=" << d << " alpha=" << alpha);
      CHECK(rel_l2(translate_direct(rule, f, x), translate_spectral(plan, f, x), plan.weights_in()) <= 1e-5);
    }
  }
}

TEST_CASE("translation contracts L1 and L2 norms") {
  const auto g = make_grid(1, 0.5, 14, 128, 12, 144);
  const TransformPlan plan(g);
  const TranslationRule rule(0.5);
  Rng rng(5);
  const auto& w = plan.weights_in();
  for (int t = 0; t < 8; ++t) {
    const Field f = positive_bump(g, rng);
    const std::vector<double> x{rng.uniform(-2, 2), rng.uniform(0, 2)};
    const Field ts = translate_spectral(plan, f, x);
    const Field td = translate_direct(rule, f, x);
    CHECK(norm_p(ts, w, 2.0) <= norm_p(f, w, 2.0) * (1 + 1e-10));
    CHECK(norm_p(td, w, 2.0) <= norm_p(f, w, 2.0) * (1 + 1e-6));
    CHECK(norm_p(ts, w, 1.0) <= norm_p(f, w, 1.0) * (1 + 1e-10));
    // the direct route carries interpolation error
    CHECK(norm_p(td, w, 1.0) <= norm_p(f, w, 1.0) * (1 + 1e-6));
  }
  CHECK_THROWS_AS(translate_direct(rule, gaussian(g), std::vector<double>{20.0, 1.0}), DomainError);
}

TEST_CASE("translation is symmetric in its two points") {
  const auto g = make_grid(1, 1.0, 10, 64, 10, 128);
  const TransformPlan plan(g);
  const Field f = gaussian(g, 0.8);
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    const auto i = static_cast<std::size_t>(rng.uniform(0, 1) * g->size());
    const auto j = static_cast<std::size_t>(rng.uniform(0, 1) * g->size());
    const cplx a = translate_spectral(plan, f, g->point(i))[j];
    const cplx b = translate_spectral(plan, f, g->point(j))[i];
    CHECK(std::abs(a - b) <= 1e-12);
  }
}

TEST_CASE("convolution theorem identities") {
  const auto g = make_grid(2, 1.0, 10, 64, 10, 128);
  const TransformPlan plan(g);
  Rng rng(21);
  const Field f = positive_bump(g, rng), h = positive_bump(g, rng), k = positive_bump(g, rng);
  const Field fh = convolve(plan, f, h);
  const Field spec = product(plan.forward(f), plan.forward(h));
  CHECK(norm_p(plan.forward(fh) - spec, plan.weights_out(), INFINITY) <= 1e-10 * norm_p(spec, plan.weights_out(), INFINITY));
  CHECK(std::abs(norm_p(fh, plan.weights_in(), 2.0) - norm_p(spec, plan.weights_out(), 2.0)) <=
        1e-10 * norm_p(spec, plan.weights_out(), 2.0));
  CHECK(norm_p(fh - convolve(plan, h, f), plan.weights_in(), INFINITY) <= 1e-12 * norm_p(fh, plan.weights_in(), INFINITY));
  const Field left = convolve(plan, fh, k), right = convolve(plan, f, convolve(plan, h, k));
  CHECK(rel_l2(left, right, plan.weights_in()) <= 1e-8);
  CHECK_THROWS_AS(convolve(plan, f, gaussian(make_grid(2, 1.0, 10, 64, 10, 120))), GridMismatch);
}

TEST_CASE("Young inequality spot checks") {
  for (double alpha : {0.5, 1.5}) {
    const auto g = make_grid(1, alpha, 12, 96, 12, 144);
    const TransformPlan plan(g);
    const auto& w = plan.weights_in();
    Rng rng(31);
    for (int t = 0; t < 6; ++t) {
      const Field f = positive_bump(g, rng), h = positive_bump(g, rng);
      const Field c = convolve(plan, f, h);
      INFO("alpha=" << alpha << " t=" << t);
      CHECK(norm_p(c, w, 1.0) <= norm_p(f, w, 1.0) * norm_p(h, w, 1.0) * (1 + 1e-10));
      CHECK(norm_p(c, w, 2.0) <= norm_p(f, w, 2.0) * norm_p(h, w, 1.0) * (1 + 1e-10));
    }
  }
}

TEST_CASE("brute-force convolution matches the spectral route") {
  // odd Euclidean count: coordinate differences land on grid nodes
  const auto g = make_grid(1, 0.5, 6, 17, 5, 16);
  const TransformPlan plan(g);
  const Field f = gaussian(g, 0.8);
  const Field h = Field::sample(g, [](std::span<const double> x) {
    return cplx(std::exp(-((x[0] - 0.3) * (x[0] - 0.3) + x[1] * x[1]) / 1.2), 0.0);
  });
  const Field direct = convolve_direct(TranslationRule(0.5), plan.weights_in(), f, h);
  CHECK(rel_l2(direct, convolve(plan, f, h), plan.weights_in()) <= 1e-4);
}
