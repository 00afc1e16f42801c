#include "weinstein/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>

#include "weinstein/error.hpp"
#include "weinstein/kernels.hpp"

namespace weinstein {

std::string to_string(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::evaluated: return "evaluated";
    case CertificateStatus::hypothesis_violated: return "hypothesis_violated";
    case CertificateStatus::vacuous: return "vacuous";
  }
  return "unknown";
}

CertificateStatus certificate_status_from_string(const std::string& name) {
  if (name == "evaluated") return CertificateStatus::evaluated;
  if (name == "hypothesis_violated") return CertificateStatus::hypothesis_violated;
  if (name == "vacuous") return CertificateStatus::vacuous;
  throw ConfigError("unknown certificate status: " + name);
}

double InequalityCertificate::diagnostic(std::string_view key) const {
  for (const auto& [k, v] : diagnostics) {
    if (k == key) return v;
  }
  throw std::out_of_range("no diagnostic named " + std::string(key));
}

InequalityCertificate make_certificate(std::string name, const WeinsteinParams& params, double lhs, double rhs,
                                       double slack, std::string digest) {
  if (!(slack >= 0.0)) throw DomainError("certification slack must be nonnegative");
  InequalityCertificate c;
  c.name = std::move(name);
  c.d = params.d();
  c.alpha = params.alpha();
  c.lhs = lhs;
  c.rhs = rhs;
  if (rhs > 0.0) {
    c.ratio = lhs / rhs;
  } else {
    c.ratio = lhs <= 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  c.satisfied = c.ratio <= 1.0 + slack;
  c.slack = slack;
  c.input_digest = std::move(digest);
  return c;
}

std::string field_digest(const Field& f) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const cplx& v : f.values()) {
    double parts[2] = {v.real(), v.imag()};
    unsigned char bytes[sizeof parts];
    std::memcpy(bytes, parts, sizeof parts);
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 0x100000001b3ULL;
    }
  }
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = hex[h & 0xf];
    h >>= 4;
  }
  buf[16] = '\0';
  return buf;
}

namespace {

void require_beta(double beta, const char* what) {
  if (!(beta >= 1.0) || !std::isfinite(beta)) throw DomainError(std::string(what) + " exponent must be >= 1");
}

// |x|^{2 beta} per grid point.
std::vector<double> moment_density(const Grid& g, double beta, std::span<const double> w) {
  const auto r2 = g.squared_norms();
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = w[i] * std::pow(r2[i], beta);
  return out;
}

double require_nonzero(const Field& f, const WeightField& w, const char* what) {
  const double n2 = kernels::weighted_abs2_sum(w.weights(), f.values());
  if (!(n2 > 0.0)) throw DomainError(std::string(what) + " needs a nonzero field");
  return n2;
}

std::string compose_digest(const CertificateOptions& opt, const Field& f, const MultiplierProfile* m) {
  std::string s = opt.label.empty() ? std::string("f") : opt.label;
  s += ";f#" + field_digest(f);
  if (m) {
    s += ";m=" + to_string(m->family()) + "/" + to_string(m->variant());
    s += "#" + field_digest(m->symbol());
  }
  return s;
}

struct Hypothesis {
  bool holds = false;
  double defect = 0.0;
};

Hypothesis check_admissible(const TransformPlan& plan, const MultiplierProfile& m, const Field& Ff,
                            const CertificateOptions& opt) {
  Hypothesis h;
  const auto report = admissibility_defect(m, opt.tail_budget);
  h.defect = spectral_admissibility_defect(report, Ff, plan.weights_out());
  h.holds = m.variant() == AdmissibilityVariant::modulus_squared && h.defect <= opt.admissibility_tolerance;
  return h;
}

}  // namespace

double dispersion(const Field& f, const WeightField& w, double beta) {
  require_beta(beta, "dispersion");
  require_same_grid(f.grid(), w.grid(), "dispersion");
  const auto dens = moment_density(f.grid(), beta, w.weights());
  return std::sqrt(kernels::weighted_abs2_sum(dens, f.values()));
}

std::vector<double> multiplier_dispersion(const TransformPlan& plan, const MultiplierProfile& m, const Field& f,
                                          const std::vector<double>& betas,
                                          std::vector<std::vector<double>>* per_sigma) {
  for (double b : betas) require_beta(b, "multiplier dispersion");
  const SigmaGrid& sg = m.sigma_grid();
  std::vector<std::vector<double>> dens;
  dens.reserve(betas.size());
  for (double b : betas) dens.push_back(moment_density(*plan.grid_in(), b, plan.weights_in().weights()));
  std::vector<std::vector<double>> g(betas.size(), std::vector<double>(sg.size()));
  for_each_sigma(plan, m, f, [&](std::size_t s, double, const Field& t) {
    for (std::size_t k = 0; k < betas.size(); ++k) g[k][s] = kernels::weighted_abs2_sum(dens[k], t.values());
  });
  std::vector<double> out(betas.size());
  for (std::size_t k = 0; k < betas.size(); ++k) {
    const auto closure = sg.integrate_with_tails(g[k]);
    if (!closure.finite) throw NumericGuardError("sigma tail of the multiplier moment does not decay");
    out[k] = std::sqrt(std::max(0.0, closure.total()));
  }
  if (per_sigma) {
    for (auto& row : g) {
      for (double& v : row) v = std::sqrt(v);
    }
    *per_sigma = std::move(g);
  }
  return out;
}

double spectral_admissibility_defect(const AdmissibilityReport& report, const Field& Ff, const WeightField& w) {
  require_same_grid(Ff.grid(), w.grid(), "spectral admissibility defect");
  if (report.defect.size() != Ff.size()) throw GridMismatch("admissibility report does not match the field");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < Ff.size(); ++i) {
    const double e = w[i] * std::norm(Ff[i]);
    const double def = std::isfinite(report.defect[i]) ? std::min(report.defect[i], 1.0) : 1.0;
    num += e * def;
    den += e;
  }
  if (!(den > 0.0)) throw DomainError("spectral admissibility defect needs a nonzero field");
  return num / den;
}

InequalityCertificate heisenberg_certificate(const TransformPlan& plan, const Field& f, const CertificateOptions& opt) {
  require_same_grid(f.grid(), *plan.grid_in(), "heisenberg_certificate");
  const double n2 = require_nonzero(f, plan.weights_in(), "heisenberg certificate");
  const double D = plan.params().homogeneity_degree();
  const Field F = plan.forward(f);
  const double a = dispersion(f, plan.weights_in(), 1.0);
  const double b = dispersion(F, plan.weights_out(), 1.0);
  auto c = make_certificate("heisenberg", plan.params(), n2, 2.0 / D * a * b, opt.slack, compose_digest(opt, f, nullptr));
  c.diagnostics = {{"norm2", n2}, {"x_dispersion", a}, {"y_dispersion", b}};
  return c;
}

InequalityCertificate multiplier_heisenberg_certificate(const TransformPlan& plan, const MultiplierProfile& m,
                                                        const Field& f, const CertificateOptions& opt) {
  auto c = general_heisenberg_certificate(plan, m, f, 1.0, 1.0, opt);
  c.name = "multiplier_heisenberg";
  c.parts.clear();
  return c;
}

InequalityCertificate general_heisenberg_certificate(const TransformPlan& plan, const MultiplierProfile& m,
                                                     const Field& f, double beta, double delta,
                                                     const CertificateOptions& opt) {
  require_beta(beta, "beta");
  require_beta(delta, "delta");
  require_same_grid(f.grid(), *plan.grid_in(), "general_heisenberg_certificate");
  const double n2 = require_nonzero(f, plan.weights_in(), "multiplier certificate");
  const double n = std::sqrt(n2);
  const double D = plan.params().homogeneity_degree();
  const double eps = delta / (beta + delta);

  const Field F = plan.forward(f);
  const Hypothesis hyp = check_admissible(plan, m, F, opt);

  std::vector<double> betas{beta};
  if (beta != 1.0) betas.push_back(1.0);
  std::vector<std::vector<double>> per_sigma;
  const auto agg = multiplier_dispersion(plan, m, f, betas, &per_sigma);
  const double a_beta = agg[0];
  const double a_one = agg.back();
  const double b_delta = dispersion(F, plan.weights_out(), delta);
  const double b_one = delta == 1.0 ? b_delta : dispersion(F, plan.weights_out(), 1.0);

  const double rhs = std::pow(2.0 / D, 2.0 * beta * eps) * std::pow(a_beta, 2.0 * eps) * std::pow(b_delta, 2.0 * (1.0 - eps));
  const std::string digest = compose_digest(opt, f, &m);
  auto c = make_certificate("general_heisenberg", plan.params(), n2, rhs, opt.slack, digest);
  if (!hyp.holds) c.status = CertificateStatus::hypothesis_violated;

  // Per-sigma reading: the same bound with the aggregated moment replaced by
  // the moment at one sigma; reports the smallest resulting ratio.
  double per_sigma_min_ratio = std::numeric_limits<double>::infinity();
  for (double v : per_sigma[0]) {
    const double r = std::pow(2.0 / D, 2.0 * beta * eps) * std::pow(v, 2.0 * eps) * std::pow(b_delta, 2.0 * (1.0 - eps));
    if (r > 0.0) per_sigma_min_ratio = std::min(per_sigma_min_ratio, n2 / r);
  }
  c.diagnostics = {{"beta", beta},
                   {"delta", delta},
                   {"epsilon", eps},
                   {"norm2", n2},
                   {"aggregated_x_moment", a_beta},
                   {"y_moment", b_delta},
                   {"spectral_admissibility_defect", hyp.defect},
                   {"per_sigma_min_ratio", per_sigma_min_ratio}};

  auto hx = make_certificate("holder_x", plan.params(), a_one,
                             std::pow(a_beta, 1.0 / beta) * std::pow(n, 1.0 - 1.0 / beta), opt.slack, digest);
  auto hy = make_certificate("holder_y", plan.params(), b_one,
                             std::pow(b_delta, 1.0 / delta) * std::pow(n, 1.0 - 1.0 / delta), opt.slack, digest);
  hx.status = c.status;
  c.parts = {std::move(hx), std::move(hy)};
  return c;
}

double concentration_defect(const Field& f, const WeightField& w, const Region& omega) {
  require_same_grid(f.grid(), w.grid(), "concentration_defect");
  if (omega.mask().size() != f.size()) throw GridMismatch("region does not match the field");
  const double n2 = require_nonzero(f, w, "concentration defect");
  double out = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!omega.contains(i)) out += w[i] * std::norm(f[i]);
  }
  return std::min(1.0, std::sqrt(out / n2));
}

std::vector<double> multiplier_energy_density(const TransformPlan& plan, const MultiplierProfile& m, const Field& f) {
  const std::size_t n = plan.grid_in()->size();
  std::vector<double> out(m.sigma_grid().size() * n);
  for_each_sigma(plan, m, f, [&](std::size_t s, double, const Field& t) {
    for (std::size_t i = 0; i < n; ++i) out[s * n + i] = std::norm(t[i]);
  });
  return out;
}

namespace {

double sigma_defect_from_density(const std::vector<double>& energy, const SigmaGrid& sg, const WeightField& w,
                                 const SigmaRegion& region) {
  const std::size_t n = w.weights().size();
  if (region.points() != n || region.sigma_count() != sg.size()) throw GridMismatch("sigma region does not match");
  std::vector<double> outside(energy.size());
  for (std::size_t k = 0; k < energy.size(); ++k) outside[k] = region.mask()[k] ? 0.0 : energy[k];
  const double total = theta_integral(energy, sg, w);
  if (!(total > 0.0)) throw DomainError("sigma concentration defect needs a nonzero field");
  return std::min(1.0, std::sqrt(std::max(0.0, theta_integral(outside, sg, w)) / total));
}

}  // namespace

double sigma_concentration_defect(const TransformPlan& plan, const MultiplierProfile& m, const Field& f,
                                  const SigmaRegion& sigma_region) {
  require_nonzero(f, plan.weights_in(), "sigma concentration defect");
  const auto energy = multiplier_energy_density(plan, m, f);
  return sigma_defect_from_density(energy, m.sigma_grid(), plan.weights_in(), sigma_region);
}

InequalityCertificate donoho_stark_certificate(const TransformPlan& plan, const MultiplierProfile& m, const Field& f,
                                               const Region& omega, const SigmaRegion& sigma_region,
                                               const CertificateOptions& opt) {
  require_same_grid(f.grid(), *plan.grid_in(), "donoho_stark_certificate");
  require_nonzero(f, plan.weights_in(), "donoho-stark certificate");
  const double D = plan.params().homogeneity_degree();
  const double inv_int = sigma_region.inverse_power_integral(D);

  const Field F = plan.forward(f);
  const Hypothesis hyp = check_admissible(plan, m, F, opt);
  const double eps = concentration_defect(f, plan.weights_in(), omega);
  const auto energy = multiplier_energy_density(plan, m, f);
  const double nu = sigma_defect_from_density(energy, m.sigma_grid(), plan.weights_in(), sigma_region);

  const double m1 = norm_p(m.symbol(), plan.weights_out(), 1.0);
  const double mu = omega.measure();
  const double bound = m1 * std::sqrt(mu) * std::sqrt(inv_int);
  const double lhs = 1.0 - (eps + nu);
  const std::string digest = compose_digest(opt, f, &m);

  auto c = make_certificate("donoho_stark", plan.params(), lhs, bound, opt.slack, digest);
  if (!hyp.holds) {
    c.status = CertificateStatus::hypothesis_violated;
  } else if (lhs <= 0.0) {
    c.status = CertificateStatus::vacuous;
  }
  c.diagnostics = {{"epsilon", eps},
                   {"nu", nu},
                   {"m_l1", m1},
                   {"omega_measure", mu},
                   {"sigma_inverse_power_integral", inv_int},
                   {"theta_measure", sigma_region.theta_measure()},
                   {"spectral_admissibility_defect", hyp.defect}};

  if (!sigma_region.is_empty()) {
    const double rho = 1.0 / sigma_region.smallest_sigma();
    const double cor = std::pow(rho, D) * m1 * std::sqrt(mu) * std::sqrt(sigma_region.theta_measure());
    auto cc = make_certificate("donoho_stark_corollary", plan.params(), lhs, cor, opt.slack, digest);
    cc.status = c.status;
    cc.diagnostics = {{"rho", rho}};
    auto imp = make_certificate("corollary_implied", plan.params(), bound, cor, 1e-12, digest);
    c.parts = {std::move(cc), std::move(imp)};
  }
  return c;
}

}  // namespace weinstein
