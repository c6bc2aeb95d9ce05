#pragma once

#include <string>

#include "json.hpp"

#include "isoreach/core.hpp"
#include "isoreach/metrics.hpp"

namespace isoreach {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// {n, m, B, primes, limbs}, limbs edge-indexed.
Json weights_to_json(const WeightAssignment& w);
/// Inverse of weights_to_json. Non-custom assignments are re-derived from
/// their primes and must match the stored limbs.
WeightAssignment weights_from_json(const Json& j, const Graph& g);

Json trace_to_json(const RunTrace& trace);
Json construction_to_json(const ConstructionResult& result);
Json scaling_to_json(const ScalingReport& report);

/// Aligned plain-text table of a scaling report.
std::string scaling_table(const ScalingReport& report);

/// FNV-1a 64 of the serialized graph, as 16 hex digits.
std::string input_digest(const Graph& g);

}  // namespace isoreach
