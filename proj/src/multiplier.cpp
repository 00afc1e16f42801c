#include "weinstein/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "weinstein/error.hpp"
#include "weinstein/interpolation.hpp"
#include "weinstein/kernels.hpp"

namespace weinstein {

std::string to_string(AdmissibilityVariant v) {
  return v == AdmissibilityVariant::modulus ? "modulus" : "modulus_squared";
}

AdmissibilityVariant admissibility_variant_from_string(const std::string& name) {
  if (name == "modulus") return AdmissibilityVariant::modulus;
  if (name == "modulus_squared") return AdmissibilityVariant::modulus_squared;
  throw DomainError("unknown admissibility variant: " + name);
}

std::string to_string(SymbolFamily f) { return f == SymbolFamily::sampled ? "sampled" : "gaussian_bump"; }

SymbolFamily symbol_family_from_string(const std::string& name) {
  if (name == "sampled") return SymbolFamily::sampled;
  if (name == "gaussian_bump") return SymbolFamily::gaussian_bump;
  throw DomainError("unknown symbol family: " + name);
}

double gaussian_bump(double r) { return std::numbers::sqrt2 * r * std::exp(-0.5 * r * r); }

namespace {

constexpr std::size_t kDilationOrder = 4;

double norm_of(std::span<const double> y) {
  double s = 0.0;
  for (double v : y) s += v * v;
  return std::sqrt(s);
}

void require_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("dilation sigma must be positive");
}

}  // namespace

MultiplierProfile::MultiplierProfile(Field symbol, SigmaGrid sigma_grid, AdmissibilityVariant variant,
                                     SymbolFamily family, double family_scale)
    : symbol_(std::move(symbol)),
      sigma_grid_(std::move(sigma_grid)),
      variant_(variant),
      family_(family),
      family_scale_(family_scale) {
  if (!(family_scale > 0.0) || !std::isfinite(family_scale)) throw DomainError("family scale must be positive");
}

cplx MultiplierProfile::dilated(double sigma, std::span<const double> y) const {
  switch (family_) {
    case SymbolFamily::gaussian_bump: return gaussian_bump(family_scale_ * sigma * norm_of(y));
    case SymbolFamily::sampled: break;
  }
  std::vector<double> p(y.begin(), y.end());
  for (double& v : p) v *= sigma;
  const FieldInterpolator interp(symbol_, std::min(kDilationOrder, symbol_.grid().radial_size()));
  return interp(p);
}

MultiplierProfile MultiplierProfile::with_variant(AdmissibilityVariant v) const {
  return MultiplierProfile(symbol_, sigma_grid_, v, family_, family_scale_);
}

MultiplierProfile MultiplierProfile::with_sigma_grid(SigmaGrid sg) const {
  return MultiplierProfile(symbol_, std::move(sg), variant_, family_, family_scale_);
}

MultiplierProfile symbol_profile(SymbolFamily family, const GridPtr& frequency_grid, const SigmaGrid& sg,
                                 AdmissibilityVariant variant, double family_scale) {
  if (family == SymbolFamily::sampled) throw DomainError("symbol_profile needs a closed-form family");
  Field symbol = Field::sample(frequency_grid, [&](std::span<const double> y) {
    return cplx(gaussian_bump(family_scale * norm_of(y)));
  });
  return MultiplierProfile(std::move(symbol), sg, variant, family, family_scale);
}

Field dilate_symbol(const MultiplierProfile& m, double sigma) {
  require_sigma(sigma);
  if (sigma == 1.0) return m.symbol();
  const GridPtr& g = m.symbol().grid_ptr();
  if (m.family() != SymbolFamily::sampled) {
    return Field::sample(g, [&](std::span<const double> y) { return m.dilated(sigma, y); });
  }
  const FieldInterpolator interp(m.symbol(), std::min(kDilationOrder, g->radial_size()));
  std::vector<double> p(g->d() + 1);
  return Field::sample(g, [&](std::span<const double> y) {
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = sigma * y[i];
    return interp(p);
  });
}

AdmissibilityReport admissibility_defect(const MultiplierProfile& m, double tail_budget) {
  if (!(tail_budget > 0.0)) throw DomainError("tail budget must be positive");
  const Grid& g = m.symbol().grid();
  const SigmaGrid& sg = m.sigma_grid();
  const double q = m.variant() == AdmissibilityVariant::modulus ? 1.0 : 2.0;

  AdmissibilityReport r;
  r.tail_budget = tail_budget;
  const std::size_t n = g.size();
  r.defect.assign(n, 0.0);
  r.in_range_defect.assign(n, 0.0);
  r.tail.assign(n, 0.0);
  r.covered.assign(n, 0);

  std::vector<double> y(g.d() + 1);
  std::vector<double> vals(sg.size());
  std::optional<FieldInterpolator> interp;
  if (m.family() == SymbolFamily::sampled) interp.emplace(m.symbol(), std::min(kDilationOrder, g.radial_size()));
  std::vector<double> p(y.size());

  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    g.point(i, y);
    const double ny = norm_of(y);
    if (ny == 0.0) {
      ++r.excluded_count;
      continue;
    }
    for (std::size_t s = 0; s < sg.size(); ++s) {
      double a;
      if (interp) {
        for (std::size_t k = 0; k < p.size(); ++k) p[k] = sg[s] * y[k];
        a = std::abs((*interp)(p));
      } else {
        a = std::abs(m.dilated(sg[s], y));
      }
      vals[s] = q == 2.0 ? a * a : a;
    }
    const auto closure = sg.integrate_with_tails(vals);
    r.in_range_defect[i] = std::abs(closure.in_range - 1.0);
    r.max_in_range_defect = std::max(r.max_in_range_defect, r.in_range_defect[i]);
    r.tail[i] = closure.finite ? std::max(closure.low_tail, closure.high_tail) : INFINITY;
    r.defect[i] = closure.finite ? std::abs(closure.total() - 1.0) : INFINITY;
    if (closure.finite && r.tail[i] <= tail_budget) {
      r.covered[i] = 1;
      ++r.covered_count;
      r.max_defect = std::max(r.max_defect, r.defect[i]);
      sum += r.defect[i];
    }
  }
  r.mean_defect = r.covered_count ? sum / static_cast<double>(r.covered_count) : 0.0;
  return r;
}

namespace {

void require_symbol_grid(const TransformPlan& plan, const MultiplierProfile& m) {
  require_same_grid(m.symbol().grid(), *plan.grid_out(), "multiplier symbol");
}

}  // namespace

Field apply_multiplier(const TransformPlan& plan, const MultiplierProfile& m, double sigma, const Field& phi) {
  require_sigma(sigma);
  require_symbol_grid(plan, m);
  auto v = plan.forward(phi).release();
  kernels::mul_complex(v, dilate_symbol(m, sigma).values());
  return plan.inverse(Field(plan.grid_out(), std::move(v)));
}

void for_each_sigma(const TransformPlan& plan, const MultiplierProfile& m, const Field& phi,
                    const std::function<void(std::size_t, double, const Field&)>& visit) {
  require_symbol_grid(plan, m);
  const Field F = plan.forward(phi);
  const auto& sg = m.sigma_grid();
  for (std::size_t i = 0; i < sg.size(); ++i) {
    std::vector<cplx> v(F.values().begin(), F.values().end());
    kernels::mul_complex(v, dilate_symbol(m, sg[i]).values());
    const Field t = plan.inverse(Field(plan.grid_out(), std::move(v)));
    visit(i, sg[i], t);
  }
}

double multiplier_plancherel_defect(const TransformPlan& plan, const MultiplierProfile& m, const Field& phi) {
  const double n2 = kernels::weighted_abs2_sum(plan.weights_in().weights(), phi.values());
  if (!(n2 > 0.0)) throw DomainError("multiplier Plancherel defect needs a nonzero field");
  std::vector<double> energy(m.sigma_grid().size());
  for_each_sigma(plan, m, phi, [&](std::size_t i, double, const Field& t) {
    energy[i] = kernels::weighted_abs2_sum(plan.weights_in().weights(), t.values());
  });
  const auto closure = m.sigma_grid().integrate_with_tails(energy);
  if (!closure.finite) throw NumericGuardError("sigma tail of the multiplier energy does not decay");
  return std::abs(closure.total() - n2) / n2;
}

cplx kernel_psi(const TransformPlan& plan, const MultiplierProfile& m, double sigma, std::span<const double> x,
                std::span<const double> y) {
  require_sigma(sigma);
  require_symbol_grid(plan, m);
  const Grid& gz = *plan.grid_out();
  const auto& params = plan.params();
  const auto& be = plan.bessel();
  const std::size_t d = gz.euclid_axes().size();
  std::vector<double> neg_x(x.begin(), x.end());
  for (std::size_t a = 0; a < d; ++a) neg_x[a] = -neg_x[a];
  const Field ms = dilate_symbol(m, sigma);
  std::vector<double> z(d + 1);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < gz.size(); ++i) {
    if (ms[i] == 0.0) continue;
    gz.point(i, z);
    acc += plan.weights_out()[i] * ms[i] * weinstein_kernel(params, be, z, neg_x) * weinstein_kernel(params, be, z, y);
  }
  return std::pow(sigma, params.homogeneity_degree()) * acc;
}

Field apply_multiplier_kernel(const TransformPlan& plan, const MultiplierProfile& m, double sigma, const Field& phi) {
  require_sigma(sigma);
  require_symbol_grid(plan, m);
  const Grid& gx = *plan.grid_in();
  const Grid& gz = *plan.grid_out();
  require_same_grid(phi.grid(), gx, "apply_multiplier_kernel");
  if (gx.size() > kKernelRouteLimit) {
    throw NumericGuardError("kernel route is limited to " + std::to_string(kKernelRouteLimit) + " grid points");
  }
  const std::size_t nx = gx.size(), nz = gz.size();
  const auto& params = plan.params();
  const auto& be = plan.bessel();
  const std::size_t d = gx.euclid_axes().size();
  const double D = params.homogeneity_degree();

  // Lambda(z, x) for every pair; Lambda(z, -x) is the entry at the reflected x.
  std::vector<cplx> lam(nz * nx);
  std::vector<double> z(d + 1), x(d + 1);
  for (std::size_t i = 0; i < nz; ++i) {
    gz.point(i, z);
    for (std::size_t j = 0; j < nx; ++j) {
      gx.point(j, x);
      lam[i * nx + j] = weinstein_kernel(params, be, z, x);
    }
  }
  const Field ms = dilate_symbol(m, sigma);
  std::vector<cplx> wm(nz);
  for (std::size_t i = 0; i < nz; ++i) wm[i] = plan.weights_out()[i] * ms[i];

  const double up = std::pow(sigma, D);
  const double down = std::pow(sigma, -D);
  std::vector<cplx> psi_row(nx);
  std::vector<cplx> out(nx);
  for (std::size_t a = 0; a < nx; ++a) {
    const std::size_t ra = gx.reflect_index(a);
    std::fill(psi_row.begin(), psi_row.end(), cplx(0.0));
    for (std::size_t i = 0; i < nz; ++i) {
      if (wm[i] == 0.0) continue;
      const cplx c = wm[i] * lam[i * nx + ra];
      const cplx* row = lam.data() + i * nx;
      for (std::size_t b = 0; b < nx; ++b) psi_row[b] += c * row[b];
    }
    cplx acc = 0.0;
    for (std::size_t b = 0; b < nx; ++b) acc += plan.weights_in()[b] * (up * psi_row[b]) * phi[b];
    out[a] = down * acc;
  }
  return Field(plan.grid_in(), std::move(out));
}

KernelBound kernel_pointwise_bound(const TransformPlan& plan, const MultiplierProfile& m, double sigma,
                                   const Field& phi, std::span<const char> omega) {
  const Grid& gx = *plan.grid_in();
  if (omega.size() != gx.size()) throw GridMismatch("region mask does not match the grid");
  std::vector<cplx> chi(phi.size());
  double mu = 0.0;
  for (std::size_t i = 0; i < chi.size(); ++i) {
    if (omega[i]) {
      chi[i] = phi[i];
      mu += plan.weights_in()[i];
    }
  }
  const Field t = apply_multiplier_kernel(plan, m, sigma, Field(plan.grid_in(), std::move(chi)));
  KernelBound kb;
  for (const auto& v : t.values()) kb.max_value = std::max(kb.max_value, std::abs(v));
  const double m1 = norm_p(m.symbol(), plan.weights_out(), 1.0);
  kb.bound = std::pow(sigma, -plan.params().homogeneity_degree()) * m1 * norm_p(phi, plan.weights_in(), 2.0) *
             std::sqrt(mu);
  return kb;
}

MultiplierProfile make_admissible_radial(SymbolFamily family, const GridPtr& frequency_grid, const SigmaGrid& sg,
                                         double tolerance, double tail_budget) {
  auto profile = symbol_profile(family, frequency_grid, sg, AdmissibilityVariant::modulus_squared);
  const auto report = admissibility_defect(profile, tail_budget);
  if (report.covered_count == 0) {
    std::ostringstream os;
    os << "sigma range [" << sg.min() << ", " << sg.max()
       << "] too narrow: no frequency point has its tails within budget; achieved in-range defect "
       << report.max_in_range_defect;
    throw NumericGuardError(os.str());
  }
  if (report.max_defect > tolerance) {
    std::ostringstream os;
    os << "admissibility tolerance " << tolerance << " not reached; achieved defect " << report.max_defect;
    throw NumericGuardError(os.str());
  }
  return profile;
}

}  // namespace weinstein
