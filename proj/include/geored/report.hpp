#pragma once

#include "geored/pipeline.hpp"

#include <json.hpp>

namespace geo {

using Json = nlohmann::ordered_json;

// JSON renderings are deterministic: identical inputs and seed give
// byte-identical output. Timings are attached only on request because they
// would break that.
Json to_json(const Point& p);
Json to_json(const StructureReport& rep);
Json to_json(const ConditionReport& rep);
Json to_json(const ProbeReport& rep);
Json to_json(const RunReport& rep, bool timings = false);

std::string to_text(const StructureReport& rep);
std::string to_text(const ConditionReport& rep);
std::string to_text(const ProbeReport& rep);
std::string to_text(const RunReport& rep);

}  // namespace geo
