#include "weinstein/translation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "weinstein/error.hpp"
#include "weinstein/interpolation.hpp"
#include "weinstein/kernels.hpp"
#include "weinstein/quadrature.hpp"

namespace weinstein {

TranslationRule::TranslationRule(double alpha, std::size_t nodes) : alpha_(alpha) {
  if (!(alpha > -0.5)) throw DomainError("alpha out of range: need alpha > -1/2");
  c_alpha_ = std::exp(std::lgamma(alpha + 1.0) - std::lgamma(alpha + 0.5)) / std::sqrt(std::numbers::pi);
  // sin^{2a} theta d theta = (1 - t^2)^{a - 1/2} dt
  auto rule = gauss_jacobi(nodes, alpha - 0.5, alpha - 0.5);
  cos_nodes_ = std::move(rule.nodes);
  weights_ = std::move(rule.weights);
  for (double& w : weights_) w *= c_alpha_;
}

double TranslationRule::total_weight() const { return kernels::pairwise_sum(weights_); }

Field translate_direct(const TranslationRule& rule, const Field& f, std::span<const double> x,
                       std::size_t interp_order) {
  const Grid& g = f.grid();
  const std::size_t d = g.euclid_axes().size();
  if (x.size() != d + 1) throw GridMismatch("translation point needs d + 1 coordinates");
  if (!g.contains(x)) throw DomainError("translation point lies outside the grid box");
  if (std::abs(rule.alpha() - g.params().alpha()) > 0.0) throw DomainError("translation rule built for another alpha");

  const FieldInterpolator interp(f, interp_order);
  const auto nodes = rule.cos_nodes();
  const auto weights = rule.weights();
  const double xr = x[d];

  std::vector<cplx> out(g.size());
  std::vector<Stencil> euclid(d);
  std::vector<double> y(d + 1);
  Stencil radial;
  const std::size_t nr = g.radial_size();
  for (std::size_t e = 0; e < g.euclid_size(); ++e) {
    g.point(e * nr, y);
    bool inside = true;
    for (std::size_t a = 0; a < d && inside; ++a) inside = axis_stencil(g.euclid_axis(a), x[a] + y[a], interp_order, euclid[a]);
    if (!inside) continue;  // zero outside the box
    for (std::size_t k = 0; k < nr; ++k) {
      const double yr = g.radial_axis()[k];
      cplx acc = 0.0;
      if (xr == 0.0) {
        if (axis_stencil(g.radial_axis(), yr, interp_order, radial)) acc = interp.evaluate(euclid, radial);
      } else {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
          const double r = std::sqrt(std::max(0.0, xr * xr + yr * yr + 2.0 * xr * yr * nodes[i]));
          if (!axis_stencil(g.radial_axis(), r, interp_order, radial)) continue;
          acc += weights[i] * interp.evaluate(euclid, radial);
        }
      }
      out[e * nr + k] = acc;
    }
  }
  return Field(f.grid_ptr(), std::move(out));
}

Field translation_symbol(const TransformPlan& plan, std::span<const double> x) {
  const Grid& go = *plan.grid_out();
  const std::size_t d = go.euclid_axes().size();
  if (x.size() != d + 1) throw GridMismatch("translation point needs d + 1 coordinates");
  std::vector<double> neg(x.begin(), x.end());
  for (std::size_t a = 0; a < d; ++a) neg[a] = -neg[a];
  const auto& be = plan.bessel();
  const auto& params = plan.params();
  return Field::sample(plan.grid_out(), [&](std::span<const double> lambda) {
    return weinstein_kernel(params, be, neg, lambda);
  });
}

Field translate_spectral(const TransformPlan& plan, const Field& f, std::span<const double> x) {
  Field F = plan.forward(f);
  const Field sym = translation_symbol(plan, x);
  auto v = std::move(F).release();
  kernels::mul_complex(v, sym.values());
  return plan.inverse(Field(plan.grid_out(), std::move(v)));
}

Field convolve(const TransformPlan& plan, const Field& f, const Field& g) {
  require_same_grid(f.grid(), g.grid(), "convolve");
  Field F = plan.forward(f);
  const Field G = plan.forward(g);
  auto v = std::move(F).release();
  kernels::mul_complex(v, G.values());
  return plan.inverse(Field(plan.grid_out(), std::move(v)));
}

Field convolve_direct(const TranslationRule& rule, const WeightField& w, const Field& f, const Field& g,
                      std::size_t interp_order) {
  require_same_grid(f.grid(), g.grid(), "convolve_direct");
  require_same_grid(f.grid(), w.grid(), "convolve_direct");
  const Grid& grid = f.grid();
  if (grid.size() > 4096) throw NumericGuardError("convolve_direct is limited to 4096 grid points");
  std::vector<cplx> out(grid.size());
  std::vector<double> x(grid.d() + 1);
  std::vector<cplx> wg(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) wg[j] = w[j] * g[j];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.point(i, x);
    const Field t = translate_direct(rule, f, x, interp_order);
    cplx acc = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) acc += t[grid.reflect_index(j)] * wg[j];
    out[i] = acc;
  }
  return Field(f.grid_ptr(), std::move(out));
}

}  // namespace weinstein
