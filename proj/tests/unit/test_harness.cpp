#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "weinstein/error.hpp"
#include "weinstein/harness.hpp"

using namespace weinstein;
using namespace weinstein::harness;

namespace {

json small_config() {
  return json::parse(R"({
    "params": {"d": 1, "alpha": [0.5, 1.0]},
    "grid": {"euclid": {"extent": 8, "count": 32}, "radial": {"extent": 8, "count": 48}},
    "sigma_grid": {"min": 0.01, "max": 100, "count": 48},
    "test_functions": {"gaussian": {"scales": [1]}, "bump": {"count": 2, "width": [0.8, 1.1]}},
    "certificates": ["heisenberg", "general_heisenberg"],
    "general_heisenberg": {"exponents": [[1, 1], [2, 1]]},
    "self_tests": ["plancherel", "round_trip"],
    "seed": 7
  })");
}

std::string config_error(const json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("config validation names the offending field") {
  CHECK_NOTHROW(parse_config(small_config()));
  CHECK_NOTHROW(parse_config(default_config()));

  json doc = small_config();
  doc["certificates"] = json::array();
  CHECK(config_error(doc).find("certificates") != std::string::npos);

  doc = small_config();
  doc["grid"]["radial"]["spacing"] = 0.25;
  CHECK(config_error(doc).find("grid.radial.spacing") != std::string::npos);
  CHECK(config_error(doc).find("unknown field") != std::string::npos);

  doc = small_config();
  doc["params"]["alpha"] = -0.7;
  CHECK(config_error(doc).find("alpha out of range") != std::string::npos);

  doc = small_config();
  doc["certificates"] = {"heisenberg", "uncertainty"};
  CHECK(config_error(doc).find("unknown entry 'uncertainty'") != std::string::npos);

  doc = small_config();
  doc["general_heisenberg"]["exponents"] = {{0.5, 1.0}};
  CHECK(config_error(doc).find("general_heisenberg.exponents") != std::string::npos);

  doc = small_config();
  doc["sigma_grid"]["min"] = 200;
  CHECK(config_error(doc).find("sigma_grid") != std::string::npos);

  doc = small_config();
  doc.erase("grid");
  CHECK(config_error(doc).find("grid") != std::string::npos);

  doc = small_config();
  doc["output"] = {{"format", "xml"}};
  CHECK(config_error(doc).find("output.format") != std::string::npos);

  doc = small_config();
  doc["multiplier"] = {{"family", "sampled"}};
  CHECK(config_error(doc).find("multiplier.family") != std::string::npos);

  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("parsed fields") {
  const auto cfg = parse_config(small_config());
  CHECK(cfg.d == 1);
  CHECK(cfg.alphas == std::vector<double>{0.5, 1.0});
  CHECK(cfg.bump.count == 2);
  CHECK(cfg.bump.width_min == 0.8);
  CHECK(cfg.exponents.size() == 2);
  CHECK(cfg.seed == 7);
  CHECK(cfg.self_tests == std::vector<std::string>{"plancherel", "round_trip"});
  CHECK(parse_config(default_config()).self_tests == self_test_names());
}

TEST_CASE("runs are deterministic and serialize losslessly") {
  const auto cfg = parse_config(small_config());
  const Report a = run(cfg);
  const Report b = run(cfg);
  CHECK(a.same_content(b));
  CHECK(report_to_json(a, false).dump() == report_to_json(b, false).dump());
  REQUIRE(a.runs.size() == 2);
  // heisenberg and general (1,1), (2,1) for 1 Gaussian and 2 bumps
  CHECK(a.runs[0].certificates.size() == 9);
  CHECK(a.runs[0].self_tests.size() == 2);
  CHECK(a.exit_code() == 0);

  const Report back = report_from_json(report_to_json(a));
  CHECK(back.same_content(a));
  CHECK(report_to_json(back, false).dump() == report_to_json(a, false).dump());
  CHECK_THROWS_AS(report_from_json(json::object()), ConfigError);

  json other = small_config();
  other["seed"] = 8;
  const Report c = run(parse_config(other));
  CHECK_FALSE(c.same_content(a));
}

TEST_CASE("CSV layout") {
  const Report r = run(parse_config(small_config()));
  std::istringstream in(report_to_csv(r));
  std::string line;
  std::getline(in, line);
  CHECK(line == "name,d,alpha,lhs,rhs,ratio,satisfied,slack,input_digest");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 8);
  }
  // general certificates add two Holder parts each
  CHECK(rows == 2 * (3 + 6 * 3));
}

TEST_CASE("exit codes follow counted failures") {
  Report r = run(parse_config(small_config()));
  CHECK(r.exit_code() == 0);
  r.runs[0].self_tests[0].passed = false;
  CHECK(r.exit_code() == 1);
  r.runs[0].self_tests[0].passed = true;
  r.runs[0].certificates[0].satisfied = false;
  CHECK(r.exit_code() == 1);
  r.runs[0].certificates[0].status = CertificateStatus::hypothesis_violated;
  CHECK(r.exit_code() == 0);
  auto& certs = r.runs[0].certificates;
  const auto general = std::find_if(certs.begin(), certs.end(), [](const auto& c) { return !c.parts.empty(); });
  REQUIRE(general != certs.end());
  general->parts[0].satisfied = false;
  CHECK(r.exit_code() == 1);
}

TEST_CASE("modulus variant flags hypotheses and fails admissibility") {
  json doc = small_config();
  doc["multiplier"] = {{"variant", "modulus"}};
  doc["certificates"] = {"multiplier_heisenberg"};
  doc["self_tests"] = {"admissibility"};
  const Report r = run(parse_config(doc));
  for (const auto& c : r.runs[0].certificates) CHECK(c.status == CertificateStatus::hypothesis_violated);
  CHECK_FALSE(r.runs[0].self_tests[0].passed);
  CHECK(r.exit_code() == 1);
}

TEST_CASE("Donoho-Stark guard") {
  json doc = small_config();
  doc["sigma_grid"] = {{"min", 0.5}, {"max", 50}, {"count", 32}};
  doc["certificates"] = {"donoho_stark"};
  doc["donoho_stark"] = {{"mass_fractions", {0.9}}, {"sigma_thresholds", {0.25}}};
  CHECK_THROWS_AS(run(parse_config(doc)), NumericGuardError);
}

TEST_CASE("emit writes the requested files") {
  const Report r = run(parse_config(small_config()));
  const auto dir = std::filesystem::temp_directory_path() / "weinstein_emit_test";
  std::filesystem::remove_all(dir);
  const auto paths = emit(r, dir, "rep", "both");
  REQUIRE(paths.size() == 2);
  for (const auto& p : paths) CHECK(std::filesystem::file_size(p) > 0);
  std::ifstream in(dir / "rep.json");
  CHECK(report_from_json(json::parse(in)).same_content(r));
  CHECK(emit(r, dir, "only", "csv").size() == 1);
  CHECK_FALSE(std::filesystem::exists(dir / "only.json"));
  CHECK_THROWS_AS(emit(r, dir, "x", "yaml"), ConfigError);
  CHECK_THROWS_AS(emit(r, dir / "rep.json" / "sub", "x", "json"), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("uniform draws") {
  CHECK(uniform01(0) == 0.0);
  CHECK(uniform01(~std::uint64_t{0}) < 1.0);
  CHECK(uniform01(std::uint64_t{1} << 63) == 0.5);
}
