#pragma once

#include <string>

#include "json.hpp"

#include "measurelab/report.hpp"

namespace mlab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

// Complex numbers encode as [re, im]; matrices as row-major nested arrays of
// [re, im]; distributions as [{"value", "probability"}, ...]. Each datum is
// tagged with its kind so the encoding parses back unambiguously.
Json to_json(const Datum& d);
Datum datum_from_json(const Json& j);

Json to_json(const ScenarioReport& r);
ScenarioReport report_from_json(const Json& j);

Json complex_to_json(Complex c);
Json matrix_to_json(const ComplexMatrix& m);

// Human-readable rendering.
std::string render_text(const ScenarioReport& r);

}  // namespace mlab
