#pragma once

#include <json.hpp>

#include "weinstein/grid.hpp"
#include "weinstein/multiplier.hpp"
#include "weinstein/sigma_grid.hpp"
#include "weinstein/uncertainty.hpp"

namespace weinstein {

using json = nlohmann::ordered_json;

/// {d, alpha, axes: [{min, max, count, scheme}], normalization_constant}.
/// The radial axis is last.
json grid_to_json(const WeightField& w);
struct GridDocument {
  GridPtr grid;
  double normalization_constant;
};
/// Throws ConfigError on malformed input.
GridDocument grid_from_json(const json& j);

json sigma_grid_to_json(const SigmaGrid& sg);
SigmaGrid sigma_grid_from_json(const json& j);

/// {grid, values: [[re, im], ...]}. Doubles round-trip exactly.
json field_to_json(const Field& f, const WeightField& w);
Field field_from_json(const json& j);

json profile_to_json(const MultiplierProfile& m, const WeightField& w);
MultiplierProfile profile_from_json(const json& j);

json certificate_to_json(const InequalityCertificate& c);
InequalityCertificate certificate_from_json(const json& j);

/// Non-finite doubles as strings ("inf", "-inf", "nan"); JSON has no literal.
json number_to_json(double v);
double number_from_json(const json& j);

}  // namespace weinstein
