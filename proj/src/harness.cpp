#include "weinstein/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "weinstein/error.hpp"
#include "weinstein/kernels.hpp"
#include "weinstein/regions.hpp"
#include "weinstein/transform.hpp"

namespace weinstein::harness {

const std::vector<std::string>& certificate_names() {
  static const std::vector<std::string> names{"heisenberg", "multiplier_heisenberg", "general_heisenberg",
                                              "donoho_stark"};
  return names;
}

const std::vector<std::string>& self_test_names() {
  static const std::vector<std::string> names{"plancherel",         "round_trip",     "fast_vs_direct",
                                              "kernel_vs_spectral", "admissibility",  "multiplier_plancherel"};
  return names;
}

double uniform01(std::uint64_t draw) noexcept { return static_cast<double>(draw >> 11) * 0x1p-53; }

namespace {

// Reads one JSON object, tracking the dotted path for messages and
// rejecting keys that were never read.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail("expected an object");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError((path_.empty() ? std::string("config") : path_) + ": " + msg);
  }
  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key);
  }
  const json& raw(const std::string& key) {
    if (!has(key)) throw ConfigError(at(key) + ": required field missing");
    return j_.at(key);
  }
  Reader object(const std::string& key) { return Reader(raw(key), at(key)); }

  double number(const std::string& key) { return as_number(raw(key), at(key)); }
  double number(const std::string& key, double def) { return has(key) ? number(key) : def; }
  double positive(const std::string& key, double def) {
    const double v = number(key, def);
    if (!(v > 0.0)) throw ConfigError(at(key) + ": must be > 0");
    return v;
  }
  std::size_t count(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError(at(key) + ": expected a nonnegative integer");
    return v.get<std::size_t>();
  }
  std::size_t count(const std::string& key, std::size_t def) { return has(key) ? count(key) : def; }
  std::string string(const std::string& key, const std::string& def) {
    if (!has(key)) return def;
    const json& v = j_.at(key);
    if (!v.is_string()) throw ConfigError(at(key) + ": expected a string");
    return v.get<std::string>();
  }
  std::vector<double> numbers(const std::string& key) {
    const json& v = raw(key);
    std::vector<double> out;
    if (v.is_number()) {
      out.push_back(v.get<double>());
    } else if (v.is_array()) {
      for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], at(key) + "[" + std::to_string(i) + "]"));
    } else {
      throw ConfigError(at(key) + ": expected a number or an array of numbers");
    }
    if (out.empty()) throw ConfigError(at(key) + ": must not be empty");
    return out;
  }
  std::vector<std::string> strings(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_array()) throw ConfigError(at(key) + ": expected an array of strings");
    std::vector<std::string> out;
    for (const json& e : v) {
      if (!e.is_string()) throw ConfigError(at(key) + ": expected an array of strings");
      out.push_back(e.get<std::string>());
    }
    return out;
  }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.count(k)) throw ConfigError(at(k) + ": unknown field");
    }
  }

 private:
  static double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError(where + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(where + ": must be finite");
    return x;
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

AxisSpec read_axis(Reader r) {
  AxisSpec a;
  a.extent = r.number("extent");
  a.count = r.count("count");
  if (!(a.extent > 0.0)) r.fail("extent must be > 0");
  if (a.count < 8) r.fail("count must be >= 8");
  r.finish();
  return a;
}

template <class F>
auto config_enum(Reader& r, const std::string& key, const std::string& def, F parse) {
  const auto s = r.string(key, def);
  try {
    return parse(s);
  } catch (const DomainError& e) {
    throw ConfigError(r.at(key) + ": " + e.what());
  }
}

void check_names(const std::vector<std::string>& got, const std::vector<std::string>& known, const std::string& where) {
  for (const auto& n : got) {
    if (std::find(known.begin(), known.end(), n) == known.end()) throw ConfigError(where + ": unknown entry '" + n + "'");
  }
}

}  // namespace

json default_config() {
  return json::parse(R"({
    "params": {"d": 1, "alpha": [0.5]},
    "grid": {"euclid": {"extent": 12, "count": 96}, "radial": {"extent": 16, "count": 128}},
    "sigma_grid": {"min": 0.01, "max": 100, "count": 128},
    "test_functions": {"gaussian": {"scales": [0.5, 1, 2]}},
    "multiplier": {"family": "gaussian_bump", "scale": 1, "variant": "modulus_squared"},
    "certificates": ["heisenberg", "multiplier_heisenberg", "general_heisenberg", "donoho_stark"],
    "seed": 0
  })");
}

ExperimentConfig parse_config(const json& doc) {
  ExperimentConfig c;
  c.source = doc;
  Reader root(doc, "");

  {
    Reader p = root.object("params");
    const json& dj = p.raw("d");
    if (!dj.is_number_integer() || dj.get<int>() < 1) throw ConfigError("params.d: expected a positive integer");
    c.d = dj.get<int>();
    c.alphas = p.numbers("alpha");
    for (double a : c.alphas) {
      if (!(a > -0.5)) throw ConfigError("params.alpha: alpha out of range: need alpha > -1/2, got " + std::to_string(a));
    }
    p.finish();
  }
  {
    Reader g = root.object("grid");
    const json& e = g.raw("euclid");
    if (e.is_array()) {
      if (e.size() != static_cast<std::size_t>(c.d)) throw ConfigError("grid.euclid: expected d entries");
      for (std::size_t i = 0; i < e.size(); ++i) c.grid.euclid.push_back(read_axis(Reader(e[i], "grid.euclid[" + std::to_string(i) + "]")));
    } else {
      c.grid.euclid.assign(c.d, read_axis(Reader(e, "grid.euclid")));
    }
    c.grid.radial = read_axis(g.object("radial"));
    c.grid.radial_scheme = config_enum(g, "radial_scheme", "offset_corrected", axis_scheme_from_string);
    if (c.grid.radial_scheme == AxisScheme::centered) throw ConfigError("grid.radial_scheme: must be a radial scheme");
    c.grid.radial_corrections = g.count("radial_corrections", 8);
    if (c.grid.radial_corrections < 1) throw ConfigError("grid.radial_corrections: must be >= 1");
    c.normalization = config_enum(g, "normalization", "self_reciprocal", normalization_from_string);
    g.finish();
  }
  if (root.has("sigma_grid")) {
    Reader s = root.object("sigma_grid");
    c.sigma_min = s.positive("min", c.sigma_min);
    c.sigma_max = s.positive("max", c.sigma_max);
    c.sigma_count = s.count("count", c.sigma_count);
    if (!(c.sigma_max > c.sigma_min)) throw ConfigError("sigma_grid: need min < max");
    if (c.sigma_count < 2) throw ConfigError("sigma_grid.count: must be >= 2");
    s.finish();
  }
  {
    Reader t = root.object("test_functions");
    bool any = false;
    if (t.has("gaussian")) {
      Reader gs = t.object("gaussian");
      c.gaussian.scales = gs.numbers("scales");
      for (double s : c.gaussian.scales) {
        if (!(s > 0.0)) throw ConfigError("test_functions.gaussian.scales: entries must be > 0");
      }
      gs.finish();
      any = true;
    } else {
      c.gaussian.scales.clear();
    }
    if (t.has("bump")) {
      Reader b = t.object("bump");
      c.bump.count = b.count("count");
      c.bump.center_spread = b.number("center_spread", c.bump.center_spread);
      if (!(c.bump.center_spread >= 0.0)) throw ConfigError("test_functions.bump.center_spread: must be >= 0");
      if (b.has("width")) {
        const auto w = b.numbers("width");
        if (w.size() != 2 || !(w[0] > 0.0) || !(w[1] >= w[0])) {
          throw ConfigError("test_functions.bump.width: expected [min, max] with 0 < min <= max");
        }
        c.bump.width_min = w[0];
        c.bump.width_max = w[1];
      }
      c.bump.modulation = b.number("modulation", c.bump.modulation);
      if (!(c.bump.modulation >= 0.0)) throw ConfigError("test_functions.bump.modulation: must be >= 0");
      b.finish();
      any = any || c.bump.count > 0;
    }
    if (!any) throw ConfigError("test_functions: select at least one test function");
    t.finish();
  }
  if (root.has("multiplier")) {
    Reader m = root.object("multiplier");
    c.multiplier.family = config_enum(m, "family", "gaussian_bump", symbol_family_from_string);
    if (c.multiplier.family == SymbolFamily::sampled) throw ConfigError("multiplier.family: needs a closed-form family");
    c.multiplier.scale = m.positive("scale", 1.0);
    c.multiplier.variant = config_enum(m, "variant", "modulus_squared", admissibility_variant_from_string);
    m.finish();
  }
  c.certificates = root.strings("certificates");
  if (c.certificates.empty()) throw ConfigError("certificates: select at least one certificate");
  check_names(c.certificates, certificate_names(), "certificates");
  c.self_tests = root.has("self_tests") ? root.strings("self_tests") : self_test_names();
  check_names(c.self_tests, self_test_names(), "self_tests");
  if (root.has("general_heisenberg")) {
    Reader g = root.object("general_heisenberg");
    const json& e = g.raw("exponents");
    if (!e.is_array() || e.empty()) throw ConfigError("general_heisenberg.exponents: expected a non-empty array");
    c.exponents.clear();
    for (std::size_t i = 0; i < e.size(); ++i) {
      const json& p = e[i];
      const std::string where = "general_heisenberg.exponents[" + std::to_string(i) + "]";
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        throw ConfigError(where + ": expected [beta, delta]");
      }
      const double b = p[0].get<double>(), dl = p[1].get<double>();
      if (!(b >= 1.0) || !(dl >= 1.0)) throw ConfigError(where + ": beta and delta must be >= 1");
      c.exponents.emplace_back(b, dl);
    }
    g.finish();
  }
  if (root.has("donoho_stark")) {
    Reader s = root.object("donoho_stark");
    if (s.has("mass_fractions")) c.mass_fractions = s.numbers("mass_fractions");
    if (s.has("sigma_thresholds")) c.sigma_thresholds = s.numbers("sigma_thresholds");
    for (double q : c.mass_fractions) {
      if (!(q > 0.0) || !(q <= 1.0)) throw ConfigError("donoho_stark.mass_fractions: entries must lie in (0, 1]");
    }
    for (double r : c.sigma_thresholds) {
      if (!(r > 0.0)) throw ConfigError("donoho_stark.sigma_thresholds: entries must be > 0");
    }
    s.finish();
  }
  if (root.has("tolerances")) {
    Reader t = root.object("tolerances");
    auto& tl = c.tol;
    tl.slack = t.positive("slack", tl.slack);
    tl.plancherel = t.positive("plancherel", tl.plancherel);
    tl.round_trip = t.positive("round_trip", tl.round_trip);
    tl.fast_vs_direct = t.positive("fast_vs_direct", tl.fast_vs_direct);
    tl.kernel_vs_spectral = t.positive("kernel_vs_spectral", tl.kernel_vs_spectral);
    tl.admissibility = t.positive("admissibility", tl.admissibility);
    tl.spectral_admissibility = t.positive("spectral_admissibility", tl.spectral_admissibility);
    tl.multiplier_plancherel = t.positive("multiplier_plancherel", tl.multiplier_plancherel);
    tl.tail_budget = t.positive("tail_budget", tl.tail_budget);
    t.finish();
  }
  if (root.has("output")) {
    Reader o = root.object("output");
    c.out_dir = o.string("dir", c.out_dir);
    c.basename = o.string("basename", c.basename);
    c.format = o.string("format", c.format);
    if (c.basename.empty() || c.basename.find('/') != std::string::npos) throw ConfigError("output.basename: must be a plain file name");
    if (c.format != "json" && c.format != "csv" && c.format != "both") throw ConfigError("output.format: expected json, csv or both");
    o.finish();
  }
  if (root.has("seed")) {
    const json& s = root.raw("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      throw ConfigError("seed: expected a nonnegative integer");
    }
    c.seed = s.get<std::uint64_t>();
  }
  root.finish();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

namespace {

struct TestFunction {
  std::string label;
  Field f;
  bool gaussian;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<TestFunction> make_test_functions(const ExperimentConfig& cfg, const GridPtr& grid) {
  std::vector<TestFunction> out;
  for (double s : cfg.gaussian.scales) {
    const double k = 0.5 / (s * s);
    out.push_back({"phi=gaussian(s=" + fmt(s) + ")",
                   Field::sample(grid,
                                 [k](std::span<const double> x) {
                                   double r2 = 0.0;
                                   for (double v : x) r2 += v * v;
                                   return cplx(std::exp(-k * r2), 0.0);
                                 }),
                   true});
  }
  std::mt19937_64 rng(cfg.seed);
  const auto u = [&](double lo, double hi) { return lo + (hi - lo) * uniform01(rng()); };
  const std::size_t d = static_cast<std::size_t>(cfg.d);
  for (std::size_t b = 0; b < cfg.bump.count; ++b) {
    std::vector<double> c(d), k(d);
    for (auto& v : c) v = u(-cfg.bump.center_spread, cfg.bump.center_spread);
    for (auto& v : k) v = u(-cfg.bump.modulation, cfg.bump.modulation);
    const double w = u(cfg.bump.width_min, cfg.bump.width_max);
    const double a = u(0.0, 1.0);
    out.push_back({"phi=bump(" + std::to_string(b) + ")",
                   Field::sample(grid,
                                 [&, w, a](std::span<const double> x) {
                                   double e = 0.0, ph = 0.0;
                                   for (std::size_t j = 0; j < d; ++j) {
                                     e += (x[j] - c[j]) * (x[j] - c[j]);
                                     ph += k[j] * x[j];
                                   }
                                   const double r = x[d];
                                   e += r * r;
                                   return (1.0 + a * r * r) * std::exp(-e / (2.0 * w * w)) * std::polar(1.0, ph);
                                 }),
                   false});
  }
  return out;
}

double relative_l2(const Field& a, const Field& b, const WeightField& w) {
  const double den = norm_p(b, w, 2.0);
  return den > 0.0 ? norm_p(a - b, w, 2.0) / den : norm_p(a, w, 2.0);
}

// Coarse grid for the dense oracles; empty when even 8 points per axis
// exceed the kernel-route limit.
std::optional<GridSpec> oracle_spec(const ExperimentConfig& cfg) {
  const std::size_t dims = static_cast<std::size_t>(cfg.d) + 1;
  std::size_t n = 16;
  while (n >= 8) {
    double total = 1.0;
    for (std::size_t i = 0; i < dims; ++i) total *= static_cast<double>(n);
    if (total <= static_cast<double>(kKernelRouteLimit)) break;
    --n;
  }
  if (n < 8) return std::nullopt;
  GridSpec s = cfg.grid;
  for (auto& a : s.euclid) a.count = n;
  s.radial.count = n;
  return s;
}

SelfTest make_test(std::string name, double value, double tol, std::string detail = {}) {
  return {std::move(name), value, tol, value <= tol, std::move(detail)};
}

class Stopwatch {
 public:
  Stopwatch(std::vector<std::pair<std::string, double>>& sink, std::string name)
      : sink_(sink), name_(std::move(name)), t0_(std::chrono::steady_clock::now()) {}
  ~Stopwatch() {
    sink_.emplace_back(name_, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count());
  }

 private:
  std::vector<std::pair<std::string, double>>& sink_;
  std::string name_;
  std::chrono::steady_clock::time_point t0_;
};

bool selected(const std::vector<std::string>& v, const char* name) {
  return std::find(v.begin(), v.end(), name) != v.end();
}

RunResult run_one(const ExperimentConfig& cfg, double alpha, std::vector<std::pair<std::string, double>>& timings) {
  const std::string tag = "d=" + std::to_string(cfg.d) + ",alpha=" + fmt(alpha);
  const WeinsteinParams params(cfg.d, alpha);
  RunResult rr;
  rr.d = cfg.d;
  rr.alpha = alpha;

  const GridPtr grid = build_grid(params, cfg.grid);
  const TransformPlan plan(grid, cfg.normalization);
  rr.grid = grid_to_json(plan.weights_in());
  const auto& w = plan.weights_in();
  const auto funcs = make_test_functions(cfg, grid);
  const Field& probe = funcs.front().f;

  const SigmaGrid sg(cfg.sigma_min, cfg.sigma_max, cfg.sigma_count);
  const MultiplierProfile m =
      symbol_profile(cfg.multiplier.family, plan.grid_out(), sg, cfg.multiplier.variant, cfg.multiplier.scale);

  // grid -> transform self-tests -> admissibility -> certificates
  {
    Stopwatch sw(timings, tag + ":transform_self_tests");
    if (selected(cfg.self_tests, "plancherel")) {
      double worst = 0.0;
      for (const auto& tf : funcs) {
        const double n2 = kernels::weighted_abs2_sum(w.weights(), tf.f.values());
        const double f2 = kernels::weighted_abs2_sum(plan.weights_out().weights(), plan.forward(tf.f).values());
        worst = std::max(worst, std::abs(f2 - n2) / n2);
      }
      rr.self_tests.push_back(make_test("plancherel", worst, cfg.tol.plancherel, "max over test functions"));
    }
    if (selected(cfg.self_tests, "round_trip")) {
      double worst = 0.0;
      for (const auto& tf : funcs) {
        const Field back = plan.inverse(plan.forward(tf.f));
        worst = std::max(worst, norm_p(back - tf.f, w, INFINITY) / norm_p(tf.f, w, INFINITY));
      }
      rr.self_tests.push_back(make_test("round_trip", worst, cfg.tol.round_trip, "max-abs relative to max |f|"));
    }
    const auto small = oracle_spec(cfg);
    if (small && (selected(cfg.self_tests, "fast_vs_direct") || selected(cfg.self_tests, "kernel_vs_spectral"))) {
      const GridPtr g2 = build_grid(params, *small);
      const TransformPlan fast(g2, cfg.normalization);
      const std::string size = "oracle grid " + std::to_string(g2->size()) + " points";
      const auto small_funcs = make_test_functions(cfg, g2);
      if (selected(cfg.self_tests, "fast_vs_direct")) {
        const TransformPlan direct(g2, cfg.normalization, TransformMethod::direct_quadrature);
        double worst = 0.0;
        for (const auto& tf : small_funcs) {
          worst = std::max(worst, relative_l2(fast.forward(tf.f), direct.forward(tf.f), fast.weights_out()));
        }
        rr.self_tests.push_back(make_test("fast_vs_direct", worst, cfg.tol.fast_vs_direct, size));
      }
      if (selected(cfg.self_tests, "kernel_vs_spectral")) {
        const MultiplierProfile m2 =
            symbol_profile(cfg.multiplier.family, fast.grid_out(), sg, cfg.multiplier.variant, cfg.multiplier.scale);
        double worst = 0.0;
        for (double sigma : {0.5, 1.0, 2.0}) {
          const Field& phi = small_funcs.front().f;
          worst = std::max(worst, relative_l2(apply_multiplier_kernel(fast, m2, sigma, phi),
                                              apply_multiplier(fast, m2, sigma, phi), fast.weights_in()));
        }
        rr.self_tests.push_back(make_test("kernel_vs_spectral", worst, cfg.tol.kernel_vs_spectral, size));
      }
    } else if (!small) {
      for (const char* n : {"fast_vs_direct", "kernel_vs_spectral"}) {
        if (selected(cfg.self_tests, n)) rr.self_tests.push_back({n, 0.0, 0.0, true, "skipped: dimension too large"});
      }
    }
  }
  {
    Stopwatch sw(timings, tag + ":admissibility");
    if (selected(cfg.self_tests, "admissibility")) {
      const auto rep = admissibility_defect(m, cfg.tol.tail_budget);
      const double value = rep.covered_count ? rep.max_defect : std::max(rep.max_in_range_defect, 1.0);
      rr.self_tests.push_back(make_test("admissibility", value, cfg.tol.admissibility,
                                        to_string(m.variant()) + ", covered " + std::to_string(rep.covered_count) +
                                            "/" + std::to_string(grid->size()) +
                                            ", max in-range defect " + fmt(rep.max_in_range_defect)));
    }
    if (selected(cfg.self_tests, "multiplier_plancherel")) {
      rr.self_tests.push_back(make_test("multiplier_plancherel", multiplier_plancherel_defect(plan, m, probe),
                                        cfg.tol.multiplier_plancherel, funcs.front().label));
    }
  }

  CertificateOptions opt;
  opt.slack = cfg.tol.slack;
  opt.admissibility_tolerance = cfg.tol.spectral_admissibility;
  opt.tail_budget = cfg.tol.tail_budget;
  Stopwatch sw(timings, tag + ":certificates");
  for (const auto& name : cfg.certificates) {
    for (const auto& tf : funcs) {
      opt.label = tf.label;
      if (name == "heisenberg") {
        rr.certificates.push_back(heisenberg_certificate(plan, tf.f, opt));
      } else if (name == "multiplier_heisenberg") {
        rr.certificates.push_back(multiplier_heisenberg_certificate(plan, m, tf.f, opt));
      } else if (name == "general_heisenberg") {
        for (const auto& [b, dl] : cfg.exponents) {
          opt.label = tf.label + ";beta=" + fmt(b) + ";delta=" + fmt(dl);
          rr.certificates.push_back(general_heisenberg_certificate(plan, m, tf.f, b, dl, opt));
        }
      } else if (name == "donoho_stark") {
        if (!tf.gaussian) continue;
        const Region box = Region::all(w);
        for (double q : cfg.mass_fractions) {
          const Region omega = Region::mass_ball(tf.f, w, q);
          for (double rho : cfg.sigma_thresholds) {
            opt.label = tf.label + ";omega=ball(q=" + fmt(q) + ");sigma>=" + fmt(rho);
            const SigmaRegion sigma_region = SigmaRegion::sigma_at_least(sg, w, rho, box);
            try {
              rr.certificates.push_back(donoho_stark_certificate(plan, m, tf.f, omega, sigma_region, opt));
            } catch (const NumericGuardError& e) {
              throw NumericGuardError(tag + ", " + opt.label + ": " + e.what());
            }
          }
        }
      }
    }
  }
  return rr;
}

void flatten(const InequalityCertificate& c, const std::string& prefix, std::vector<InequalityCertificate>& out) {
  InequalityCertificate copy = c;
  copy.name = prefix.empty() ? c.name : prefix + "/" + c.name;
  out.push_back(copy);
  for (const auto& p : c.parts) flatten(p, copy.name, out);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char ch : s) {
    if (ch == '"') o += '"';
    o += ch;
  }
  return o + "\"";
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Report run(const ExperimentConfig& cfg) {
  Report r;
  r.config = cfg.source;
  r.seed = cfg.seed;
  for (double alpha : cfg.alphas) r.runs.push_back(run_one(cfg, alpha, r.timings));
  return r;
}

int Report::exit_code() const {
  for (const auto& run : runs) {
    for (const auto& t : run.self_tests) {
      if (!t.passed) return 1;
    }
    std::vector<InequalityCertificate> flat;
    for (const auto& c : run.certificates) flatten(c, "", flat);
    for (const auto& c : flat) {
      if (c.failed()) return 1;
    }
  }
  return 0;
}

bool Report::same_content(const Report& other) const {
  return config == other.config && seed == other.seed && runs == other.runs;
}

json report_to_json(const Report& r, bool include_timings) {
  json o;
  o["config"] = r.config;
  o["seed"] = r.seed;
  json runs = json::array();
  std::size_t n_cert = 0, n_failed = 0, n_violated = 0, n_vacuous = 0, n_tests_failed = 0;
  for (const auto& run : r.runs) {
    json jr;
    jr["d"] = run.d;
    jr["alpha"] = run.alpha;
    jr["grid"] = run.grid;
    json tests = json::array();
    for (const auto& t : run.self_tests) {
      tests.push_back({{"name", t.name},
                       {"value", number_to_json(t.value)},
                       {"tolerance", t.tolerance},
                       {"passed", t.passed},
                       {"detail", t.detail}});
      n_tests_failed += t.passed ? 0 : 1;
    }
    jr["self_tests"] = std::move(tests);
    json certs = json::array();
    for (const auto& c : run.certificates) {
      certs.push_back(certificate_to_json(c));
      ++n_cert;
      n_failed += c.failed() ? 1 : 0;
      n_violated += c.status == CertificateStatus::hypothesis_violated ? 1 : 0;
      n_vacuous += c.status == CertificateStatus::vacuous ? 1 : 0;
    }
    jr["certificates"] = std::move(certs);
    runs.push_back(std::move(jr));
  }
  o["runs"] = std::move(runs);
  o["summary"] = {{"certificates", n_cert},
                  {"failed", n_failed},
                  {"hypothesis_violated", n_violated},
                  {"vacuous", n_vacuous},
                  {"self_tests_failed", n_tests_failed},
                  {"exit_code", r.exit_code()}};
  if (include_timings) {
    json t = json::object();
    for (const auto& [k, v] : r.timings) t[k] = v;
    o["timings"] = std::move(t);
  }
  return o;
}

Report report_from_json(const json& j) {
  Report r;
  try {
    r.config = j.at("config");
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const json& jr : j.at("runs")) {
      RunResult run;
      run.d = jr.at("d").get<int>();
      run.alpha = jr.at("alpha").get<double>();
      run.grid = jr.at("grid");
      for (const json& t : jr.at("self_tests")) {
        run.self_tests.push_back({t.at("name").get<std::string>(), number_from_json(t.at("value")),
                                  t.at("tolerance").get<double>(), t.at("passed").get<bool>(),
                                  t.at("detail").get<std::string>()});
      }
      for (const json& c : jr.at("certificates")) run.certificates.push_back(certificate_from_json(c));
      r.runs.push_back(std::move(run));
    }
    if (j.contains("timings")) {
      for (const auto& [k, v] : j.at("timings").items()) r.timings.emplace_back(k, v.get<double>());
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
  return r;
}

std::string report_to_csv(const Report& r) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& run : r.runs) {
    std::vector<InequalityCertificate> flat;
    for (const auto& c : run.certificates) flatten(c, "", flat);
    for (const auto& c : flat) {
      os << csv_escape(c.name) << ',' << c.d << ',' << csv_number(c.alpha) << ',' << csv_number(c.lhs) << ','
         << csv_number(c.rhs) << ',' << csv_number(c.ratio) << ',' << (c.satisfied ? "true" : "false") << ','
         << csv_number(c.slack) << ',' << csv_escape(c.input_digest) << '\n';
    }
  }
  return os.str();
}

std::vector<std::filesystem::path> emit(const Report& r, const std::filesystem::path& dir, const std::string& basename,
                                        const std::string& format) {
  if (format != "json" && format != "csv" && format != "both") throw ConfigError("unknown output format: " + format);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  const auto write = [&](const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + p.string());
    out << text;
    if (!out) throw Error("write failed for " + p.string());
    written.push_back(p);
  };
  if (format != "csv") write(dir / (basename + ".json"), report_to_json(r).dump(2) + "\n");
  if (format != "json") write(dir / (basename + ".csv"), report_to_csv(r));
  return written;
}

}  // namespace weinstein::harness
