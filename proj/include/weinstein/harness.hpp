#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weinstein/grid.hpp"
#include "weinstein/multiplier.hpp"
#include "weinstein/serialize.hpp"
#include "weinstein/uncertainty.hpp"

namespace weinstein::harness {

inline constexpr const char* kCsvHeader = "name,d,alpha,lhs,rhs,ratio,satisfied,slack,input_digest";

/// Certificate suites understood by the runner.
const std::vector<std::string>& certificate_names();
/// Self-tests understood by the runner.
const std::vector<std::string>& self_test_names();

struct GaussianSpec {
  std::vector<double> scales{1.0};
};

/// Randomized bumps (1 + a r^2) exp(-|x' - c|^2/(2 w^2) - r^2/(2 w^2)) e^{i <k, x'>}.
struct BumpSpec {
  std::size_t count = 0;
  double center_spread = 1.0;  ///< c uniform in [-spread, spread]^d
  double width_min = 0.7;
  double width_max = 1.4;
  double modulation = 0.5;  ///< k uniform in [-modulation, modulation]^d
};

struct MultiplierSpec {
  SymbolFamily family = SymbolFamily::gaussian_bump;
  double scale = 1.0;
  AdmissibilityVariant variant = AdmissibilityVariant::modulus_squared;
};

struct Tolerances {
  double slack = kDefaultSlack;
  double plancherel = 1e-6;
  double round_trip = 1e-6;
  double fast_vs_direct = 1e-8;
  double kernel_vs_spectral = 1e-4;
  double admissibility = 1e-8;
  double spectral_admissibility = 1e-4;
  double multiplier_plancherel = 1e-4;
  double tail_budget = 1e-3;
};

struct ExperimentConfig {
  int d = 1;
  std::vector<double> alphas{0.5};
  GridSpec grid;
  Normalization normalization = Normalization::self_reciprocal;
  double sigma_min = 1e-2;
  double sigma_max = 1e2;
  std::size_t sigma_count = 128;
  GaussianSpec gaussian;
  BumpSpec bump;
  MultiplierSpec multiplier;
  std::vector<std::string> certificates;
  std::vector<std::string> self_tests;
  std::vector<std::pair<double, double>> exponents{{1.0, 1.0}, {2.0, 1.0}, {1.0, 2.0}, {2.0, 2.0}};
  std::vector<double> mass_fractions{0.5, 0.9, 0.99};
  std::vector<double> sigma_thresholds{0.5, 1.0, 2.0};
  Tolerances tol;
  std::string out_dir = ".";
  std::string basename = "report";
  std::string format = "both";
  std::uint64_t seed = 0;
  /// The parsed document, echoed into the report.
  json source;
};

/// Validates a config document. Throws ConfigError naming the offending field.
ExperimentConfig parse_config(const json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);
/// Built-in example: d = 1, alpha = 0.5, Gaussian suite.
json default_config();

struct SelfTest {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
  friend bool operator==(const SelfTest&, const SelfTest&) = default;
};

struct RunResult {
  int d = 0;
  double alpha = 0.0;
  json grid;
  std::vector<SelfTest> self_tests;
  std::vector<InequalityCertificate> certificates;
  friend bool operator==(const RunResult&, const RunResult&) = default;
};

struct Report {
  json config;
  std::uint64_t seed = 0;
  std::vector<RunResult> runs;
  /// Wall-clock seconds per stage; excluded from comparisons.
  std::vector<std::pair<std::string, double>> timings;

  /// 0 when every counted certificate and self-test passed, 1 otherwise.
  int exit_code() const;
  /// Equality ignoring timings.
  bool same_content(const Report& other) const;
};

/// Executes the configured suites. Throws NumericGuardError and DomainError
/// from the numerics with context added.
Report run(const ExperimentConfig& cfg);

json report_to_json(const Report& r, bool include_timings = true);
Report report_from_json(const json& j);
std::string report_to_csv(const Report& r);

/// Writes <dir>/<basename>.json and/or .csv; returns the written paths.
/// Throws Error when the directory is not writable.
std::vector<std::filesystem::path> emit(const Report& r, const std::filesystem::path& dir, const std::string& basename,
                                        const std::string& format);

/// Uniform [0, 1) double from a 64-bit draw, 53 bits.
double uniform01(std::uint64_t draw) noexcept;

}  // namespace weinstein::harness
