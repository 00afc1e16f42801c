#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "weinstein/grid.hpp"
#include "weinstein/multiplier.hpp"
#include "weinstein/regions.hpp"
#include "weinstein/transform.hpp"

namespace weinstein {

inline constexpr double kDefaultSlack = 1e-3;

/// evaluated: hypotheses hold, the certificate is evidence.
/// hypothesis_violated: computed anyway, not a theorem instance.
/// vacuous: the bound is trivially true (non-positive side).
enum class CertificateStatus { evaluated, hypothesis_violated, vacuous };

std::string to_string(CertificateStatus s);
CertificateStatus certificate_status_from_string(const std::string& name);

/// Inequality lhs <= rhs. satisfied == (ratio <= 1 + slack).
struct InequalityCertificate {
  std::string name;
  int d = 0;
  double alpha = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool satisfied = false;
  double slack = kDefaultSlack;
  std::string input_digest;
  CertificateStatus status = CertificateStatus::evaluated;
  std::vector<std::pair<std::string, double>> diagnostics;
  std::vector<InequalityCertificate> parts;

  /// True when the certificate counts and fails.
  bool failed() const noexcept { return status == CertificateStatus::evaluated && !satisfied; }
  double diagnostic(std::string_view key) const;

  friend bool operator==(const InequalityCertificate&, const InequalityCertificate&) = default;
};

/// Builds a certificate from its two sides.
InequalityCertificate make_certificate(std::string name, const WeinsteinParams& params, double lhs, double rhs,
                                       double slack, std::string digest);

/// Hex FNV-1a digest of the samples.
std::string field_digest(const Field& f);

/// (sum w |x|^{2 beta} |f|^2)^{1/2}. Throws DomainError for beta < 1.
double dispersion(const Field& f, const WeightField& w, double beta);

/// sigma-aggregated moment (int int |x|^{2 beta} |T_sigma f|^2 d sigma/sigma d mu)^{1/2}
/// for each beta, with tail closure in sigma. `per_sigma` receives the
/// per-sigma values ||x|^beta T_sigma f|| (sigma-major, one row per beta) when
/// non-null.
std::vector<double> multiplier_dispersion(const TransformPlan& plan, const MultiplierProfile& m, const Field& f,
                                          const std::vector<double>& betas,
                                          std::vector<std::vector<double>>* per_sigma = nullptr);

/// sum w |Ff|^2 defect / sum w |Ff|^2, the admissibility defect seen by f.
/// Points whose tails do not close count with defect 1.
double spectral_admissibility_defect(const AdmissibilityReport& report, const Field& Ff, const WeightField& w);

struct CertificateOptions {
  double slack = kDefaultSlack;
  /// Largest spectral admissibility defect still treated as admissible.
  double admissibility_tolerance = 1e-4;
  double tail_budget = 1e-3;
  std::string label;  ///< free-form description of the inputs
};

/// ||f||^2 <= (2/D) ||x f|| ||y Ff||. Throws DomainError for f = 0.
InequalityCertificate heisenberg_certificate(const TransformPlan& plan, const Field& f,
                                             const CertificateOptions& opt = {});

/// ||f||^2 <= (2/D) ||y Ff|| (int int |x|^2 |T_sigma f|^2)^{1/2}.
InequalityCertificate multiplier_heisenberg_certificate(const TransformPlan& plan, const MultiplierProfile& m,
                                                        const Field& f, const CertificateOptions& opt = {});

/// ||f||^2 <= (2/D)^{2 beta eps} A_beta^{2 eps} B_delta^{2(1 - eps)} with
/// eps = delta / (beta + delta), A_beta the aggregated multiplier moment and
/// B_delta = ||y|^delta Ff||. parts holds the two Holder steps. Throws
/// DomainError for beta or delta < 1.
InequalityCertificate general_heisenberg_certificate(const TransformPlan& plan, const MultiplierProfile& m,
                                                     const Field& f, double beta, double delta,
                                                     const CertificateOptions& opt = {});

/// ||f - chi f|| / ||f||. Throws DomainError for f = 0.
double concentration_defect(const Field& f, const WeightField& w, const Region& omega);

/// Same over (sigma, x) with d Theta, restricted to the sigma range.
double sigma_concentration_defect(const TransformPlan& plan, const MultiplierProfile& m, const Field& f,
                                  const SigmaRegion& sigma_region);

/// Squared |T_sigma f|^2 samples, sigma-major.
std::vector<double> multiplier_energy_density(const TransformPlan& plan, const MultiplierProfile& m, const Field& f);

/// 1 - (eps + nu) <= ||m||_1 mu(Omega)^{1/2} (int int_Sigma sigma^{-2D} d Theta)^{1/2}.
/// parts[0] is the corollary bound with rho = 1 / smallest sigma of Sigma,
/// and parts[1] checks that it dominates the theorem bound. Throws
/// NumericGuardError when Sigma reaches sigma_min.
InequalityCertificate donoho_stark_certificate(const TransformPlan& plan, const MultiplierProfile& m, const Field& f,
                                               const Region& omega, const SigmaRegion& sigma_region,
                                               const CertificateOptions& opt = {});

}  // namespace weinstein
