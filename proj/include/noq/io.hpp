// io.hpp -- JSON serialization of states, channels and measure reports.
//
// State schema:   {"dim_a": int, "dim_b": int, "re": [[...]], "im": [[...]]}
//   row-major, composite index i*dim_b + j.
// Channel schema: {"kraus": [{"re": [[...]], "im": [[...]]}, ...]}
// Report schema:  {"measure", "value", "method", "basis_a", "basis_b",
//                  "restarts", "evaluations", "gap", "warning"}
#pragma once

#include "noq/channels.hpp"
#include "noq/measures.hpp"
#include "noq/states.hpp"

#include <json.hpp>

#include <string>

namespace noq {

using Json = nlohmann::json;

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json state_to_json(const DensityMatrix& rho);
// Parses and validates; throws Json::exception on schema problems and
// ValidationError on invalid states.
DensityMatrix state_from_json(const Json& j);

Json channel_to_json(const QubitChannel& chan);
QubitChannel channel_from_json(const Json& j);

Json report_to_json(const MeasureReport& report);

// Read a whole file; throws std::runtime_error when unreadable.
std::string read_file(const std::string& path);

}  // namespace noq
