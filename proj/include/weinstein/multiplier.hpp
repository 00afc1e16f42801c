#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weinstein/grid.hpp"
#include "weinstein/sigma_grid.hpp"
#include "weinstein/transform.hpp"

namespace weinstein {

/// Power q of |m_sigma| in the admissibility integral: modulus q = 1,
/// modulus_squared q = 2.
enum class AdmissibilityVariant { modulus, modulus_squared };

std::string to_string(AdmissibilityVariant v);
AdmissibilityVariant admissibility_variant_from_string(const std::string& name);

/// Closed-form symbol families. `sampled` has no closed form; dilation then
/// interpolates the stored samples.
enum class SymbolFamily { sampled, gaussian_bump };

std::string to_string(SymbolFamily f);
SymbolFamily symbol_family_from_string(const std::string& name);

/// sqrt(2) r e^{-r^2/2}
double gaussian_bump(double r);

class MultiplierProfile {
 public:
  /// `family_scale` c gives m(y) = bump(c |y|) for the gaussian_bump family.
  MultiplierProfile(Field symbol, SigmaGrid sigma_grid, AdmissibilityVariant variant,
                    SymbolFamily family = SymbolFamily::sampled, double family_scale = 1.0);

  const Field& symbol() const noexcept { return symbol_; }
  const SigmaGrid& sigma_grid() const noexcept { return sigma_grid_; }
  AdmissibilityVariant variant() const noexcept { return variant_; }
  SymbolFamily family() const noexcept { return family_; }
  double family_scale() const noexcept { return family_scale_; }

  /// m(sigma y) at an arbitrary frequency point.
  cplx dilated(double sigma, std::span<const double> y) const;

  MultiplierProfile with_variant(AdmissibilityVariant v) const;
  MultiplierProfile with_sigma_grid(SigmaGrid sg) const;

 private:
  Field symbol_;
  SigmaGrid sigma_grid_;
  AdmissibilityVariant variant_;
  SymbolFamily family_;
  double family_scale_;
};

/// Samples family on the frequency grid; no admissibility check.
MultiplierProfile symbol_profile(SymbolFamily family, const GridPtr& frequency_grid, const SigmaGrid& sg,
                                 AdmissibilityVariant variant, double family_scale = 1.0);

/// m_sigma(y) = m(sigma y) on the symbol's grid; zero outside the sampled box.
/// Throws DomainError for sigma <= 0.
Field dilate_symbol(const MultiplierProfile& m, double sigma);

struct AdmissibilityReport {
  /// |int_0^inf |m(sigma y)|^q d sigma / sigma - 1| per frequency point, with
  /// power-law tail closure beyond the sigma range.
  std::vector<double> defect;
  /// Same integral restricted to the configured sigma range.
  std::vector<double> in_range_defect;
  /// Larger of the two tail estimates per point.
  std::vector<double> tail;
  /// Points whose tails are finite and within the tail budget.
  std::vector<char> covered;
  std::size_t covered_count = 0;
  std::size_t excluded_count = 0;  ///< points at y = 0
  double max_defect = 0.0;         ///< over covered points
  double mean_defect = 0.0;        ///< over covered points
  double max_in_range_defect = 0.0;
  double tail_budget = 0.0;
};

AdmissibilityReport admissibility_defect(const MultiplierProfile& m, double tail_budget = 1e-3);

/// inverse(m_sigma forward(phi)). Throws DomainError for sigma <= 0 and
/// GridMismatch when the symbol does not live on the plan's frequency grid.
Field apply_multiplier(const TransformPlan& plan, const MultiplierProfile& m, double sigma, const Field& phi);

/// Calls visit(i, sigma_i, T_{sigma_i} phi) for each sigma of the profile grid,
/// in order, reusing one forward transform of phi.
void for_each_sigma(const TransformPlan& plan, const MultiplierProfile& m, const Field& phi,
                    const std::function<void(std::size_t, double, const Field&)>& visit);

/// |int ||T_sigma phi||^2 d sigma / sigma - ||phi||^2| / ||phi||^2 with tail
/// closure. Throws DomainError for phi = 0.
double multiplier_plancherel_defect(const TransformPlan& plan, const MultiplierProfile& m, const Field& phi);

/// Psi(x, y) = sigma^D sum_z w(z) m(sigma z) Lambda(z, -x) Lambda(z, y) over
/// the frequency grid, D the homogeneity degree.
cplx kernel_psi(const TransformPlan& plan, const MultiplierProfile& m, double sigma, std::span<const double> x,
                std::span<const double> y);

/// T phi(x) = sigma^{-D} sum_y w(y) Psi(x, y) phi(y) at every grid point via
/// dense kernel tables. Throws NumericGuardError above kKernelRouteLimit points.
inline constexpr std::size_t kKernelRouteLimit = 1024;
Field apply_multiplier_kernel(const TransformPlan& plan, const MultiplierProfile& m, double sigma, const Field& phi);

struct KernelBound {
  double max_value = 0.0;  ///< max_x |T(chi phi)(x)|
  double bound = 0.0;      ///< sigma^{-D} ||m||_1 ||phi||_2 mu(Omega)^{1/2}
  double ratio() const noexcept { return bound > 0.0 ? max_value / bound : 0.0; }
};

/// Evaluates the pointwise bound for T(chi_Omega phi) through the kernel route.
KernelBound kernel_pointwise_bound(const TransformPlan& plan, const MultiplierProfile& m, double sigma,
                                   const Field& phi, std::span<const char> omega);

/// Symbol of the family satisfying the modulus_squared admissibility
/// condition to `tolerance` over the sigma grid. Throws NumericGuardError with
/// the achieved defect otherwise.
MultiplierProfile make_admissible_radial(SymbolFamily family, const GridPtr& frequency_grid, const SigmaGrid& sg,
                                         double tolerance = 1e-6, double tail_budget = 1e-3);

}  // namespace weinstein
