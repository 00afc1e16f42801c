#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "weinstein/error.hpp"
#include "weinstein/harness.hpp"

namespace {

enum Exit { kOk = 0, kCertificateFailure = 1, kConfigError = 2, kNumericGuard = 3 };

int run_command(const std::string& config_path, const std::string& out_opt, const std::string& format_opt,
                const std::optional<std::uint64_t>& seed) {
  using namespace weinstein;
  harness::ExperimentConfig cfg = harness::load_config(config_path);
  if (seed) cfg.seed = *seed;
  if (!format_opt.empty()) cfg.format = format_opt;
  std::string out = cfg.out_dir;
  if (const char* env = std::getenv("WEINSTEIN_OUT_DIR"); env && *env) out = env;
  if (!out_opt.empty()) out = out_opt;

  const harness::Report report = harness::run(cfg);
  for (const auto& p : harness::emit(report, out, cfg.basename, cfg.format)) std::cerr << "wrote " << p.string() << '\n';

  const json summary = harness::report_to_json(report, false).at("summary");
  std::cout << summary.dump() << '\n';
  return report.exit_code() == 0 ? kOk : kCertificateFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weinstein transform uncertainty-inequality harness"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "Run an experiment config and write the report");
  std::string config_path, out_dir, format;
  std::optional<std::uint64_t> seed;
  bool list = false;
  auto* config_opt = run->add_option("--config", config_path, "Experiment config (JSON)")->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory (overrides WEINSTEIN_OUT_DIR and the config)");
  run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv", "both"}));
  run->add_option("--seed", seed, "Seed for randomized test functions");
  run->add_flag("--list-certificates", list, "Print the certificate suites and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  if (list) {
    for (const auto& n : weinstein::harness::certificate_names()) std::cout << n << '\n';
    return kOk;
  }
  if (config_opt->count() == 0) {
    std::cerr << "error: --config is required\n";
    return kConfigError;
  }
  try {
    return run_command(config_path, out_dir, format, seed);
  } catch (const weinstein::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const weinstein::NumericGuardError& e) {
    std::cerr << "numeric guard: " << e.what() << '\n';
    return kNumericGuard;
  } catch (const weinstein::DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const weinstein::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
}
