#include "weinstein/serialize.hpp"

#include <cmath>

#include "weinstein/error.hpp"

namespace weinstein {

namespace {

const json& field_at(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get_as(const json& j, const char* key) {
  try {
    return field_at(j, key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

json axis_to_json(const Axis& a) {
  json o;
  o["min"] = a.min();
  o["max"] = a.max();
  o["count"] = a.size();
  o["scheme"] = to_string(a.scheme());
  if (a.scheme() == AxisScheme::offset_corrected && a.corrections() != 8) o["corrections"] = a.corrections();
  return o;
}

}  // namespace

json number_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    if (s == "nan") return NAN;
  }
  throw ConfigError("expected a number, got " + j.dump());
}

json grid_to_json(const WeightField& w) {
  const Grid& g = w.grid();
  json o;
  o["d"] = g.d();
  o["alpha"] = g.params().alpha();
  json axes = json::array();
  for (const Axis& a : g.euclid_axes()) axes.push_back(axis_to_json(a));
  axes.push_back(axis_to_json(g.radial_axis()));
  o["axes"] = std::move(axes);
  o["normalization_constant"] = w.normalization_constant();
  return o;
}

GridDocument grid_from_json(const json& j) {
  const int d = get_as<int>(j, "d");
  const double alpha = get_as<double>(j, "alpha");
  const json& axes = field_at(j, "axes");
  if (!axes.is_array() || axes.size() != static_cast<std::size_t>(d) + 1) {
    throw ConfigError("field 'axes': expected d + 1 entries");
  }
  GridSpec spec;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const json& a = axes[i];
    const auto scheme = axis_scheme_from_string(get_as<std::string>(a, "scheme"));
    const double lo = get_as<double>(a, "min");
    const double hi = get_as<double>(a, "max");
    const auto count = get_as<std::size_t>(a, "count");
    const bool last = i + 1 == axes.size();
    if (last) {
      if (scheme == AxisScheme::centered) throw ConfigError("last axis must be radial");
      if (lo != 0.0) throw ConfigError("radial axis must start at 0");
      spec.radial = {hi, count};
      spec.radial_scheme = scheme;
      if (a.contains("corrections")) spec.radial_corrections = get_as<std::size_t>(a, "corrections");
    } else {
      if (scheme != AxisScheme::centered) throw ConfigError("Euclidean axes must use the centered scheme");
      if (lo != -hi) throw ConfigError("Euclidean axes must be symmetric about 0");
      spec.euclid.push_back({hi, count});
    }
  }
  try {
    GridDocument doc{build_grid(WeinsteinParams(d, alpha), spec), get_as<double>(j, "normalization_constant")};
    if (!(doc.normalization_constant > 0.0)) throw ConfigError("normalization constant must be positive");
    return doc;
  } catch (const DomainError& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
}

json sigma_grid_to_json(const SigmaGrid& sg) {
  json o;
  o["min"] = sg.min();
  o["max"] = sg.max();
  o["count"] = sg.size();
  return o;
}

SigmaGrid sigma_grid_from_json(const json& j) {
  try {
    return SigmaGrid(get_as<double>(j, "min"), get_as<double>(j, "max"), get_as<std::size_t>(j, "count"));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("sigma grid: ") + e.what());
  }
}

json field_to_json(const Field& f, const WeightField& w) {
  require_same_grid(f.grid(), w.grid(), "field_to_json");
  json o;
  o["grid"] = grid_to_json(w);
  json vals = json::array();
  for (const cplx& v : f.values()) vals.push_back(json::array({v.real(), v.imag()}));
  o["values"] = std::move(vals);
  return o;
}

Field field_from_json(const json& j) {
  const auto doc = grid_from_json(field_at(j, "grid"));
  const json& vals = field_at(j, "values");
  if (!vals.is_array() || vals.size() != doc.grid->size()) throw ConfigError("field 'values': wrong length");
  std::vector<cplx> v;
  v.reserve(vals.size());
  for (const json& e : vals) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ConfigError("field 'values': entries must be [re, im]");
    }
    v.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  try {
    return Field(doc.grid, std::move(v));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("field: ") + e.what());
  }
}

json profile_to_json(const MultiplierProfile& m, const WeightField& w) {
  json o;
  o["family"] = to_string(m.family());
  o["family_scale"] = m.family_scale();
  o["variant"] = to_string(m.variant());
  o["sigma_grid"] = sigma_grid_to_json(m.sigma_grid());
  o["symbol"] = field_to_json(m.symbol(), w);
  return o;
}

MultiplierProfile profile_from_json(const json& j) {
  return MultiplierProfile(field_from_json(field_at(j, "symbol")), sigma_grid_from_json(field_at(j, "sigma_grid")),
                           admissibility_variant_from_string(get_as<std::string>(j, "variant")),
                           symbol_family_from_string(get_as<std::string>(j, "family")),
                           get_as<double>(j, "family_scale"));
}

json certificate_to_json(const InequalityCertificate& c) {
  json o;
  o["name"] = c.name;
  o["d"] = c.d;
  o["alpha"] = c.alpha;
  o["lhs"] = number_to_json(c.lhs);
  o["rhs"] = number_to_json(c.rhs);
  o["ratio"] = number_to_json(c.ratio);
  o["satisfied"] = c.satisfied;
  o["slack"] = c.slack;
  o["input_digest"] = c.input_digest;
  o["status"] = to_string(c.status);
  json diag = json::object();
  for (const auto& [k, v] : c.diagnostics) diag[k] = number_to_json(v);
  o["diagnostics"] = std::move(diag);
  json parts = json::array();
  for (const auto& p : c.parts) parts.push_back(certificate_to_json(p));
  o["parts"] = std::move(parts);
  return o;
}

InequalityCertificate certificate_from_json(const json& j) {
  InequalityCertificate c;
  c.name = get_as<std::string>(j, "name");
  c.d = get_as<int>(j, "d");
  c.alpha = get_as<double>(j, "alpha");
  c.lhs = number_from_json(field_at(j, "lhs"));
  c.rhs = number_from_json(field_at(j, "rhs"));
  c.ratio = number_from_json(field_at(j, "ratio"));
  c.satisfied = get_as<bool>(j, "satisfied");
  c.slack = get_as<double>(j, "slack");
  c.input_digest = get_as<std::string>(j, "input_digest");
  c.status = certificate_status_from_string(get_as<std::string>(j, "status"));
  if (j.contains("diagnostics")) {
    for (const auto& [k, v] : j.at("diagnostics").items()) c.diagnostics.emplace_back(k, number_from_json(v));
  }
  if (j.contains("parts")) {
    for (const json& p : j.at("parts")) c.parts.push_back(certificate_from_json(p));
  }
  return c;
}

}  // namespace weinstein
