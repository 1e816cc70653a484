#pragma once

// JSON views of results. Floating-point values are written with 17
// significant digits; every top-level report carries "schema": 1.

#include <json.hpp>
#include <string>

#include "milnorkit/certify.hpp"
#include "milnorkit/corpus.hpp"
#include "milnorkit/fibration.hpp"
#include "milnorkit/pipeline.hpp"
#include "milnorkit/weights.hpp"

namespace milnorkit {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const RadialWeights& w);
Json to_json(const PolarWeights& w);
Json to_json(const WeightLattice& l);
Json to_json(const Verdict& v);
Json to_json(const ConditionResult& c);
Json to_json(const PipelineReport& r);
Json to_json(const ThomReport& r);
Json to_json(const CorpusEntry& e);
Json to_json(const TransversalityRadius& t);

/// Serializes with doubles as %.17g (non-finite values become null).
std::string dump_json(const Json& j, int indent = 2);

}  // namespace milnorkit
