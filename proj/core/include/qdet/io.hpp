#pragma once

// JSON schemas for state sets, channels, density matrices and reports.
// Complex numbers are [re, im] pairs; matrices are arrays of rows.

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qdet/coherence.hpp"
#include "qdet/feasibility.hpp"
#include "qdet/states.hpp"
#include "qdet/synthesis.hpp"

namespace qdet::io {

using Json = nlohmann::ordered_json;

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);
Json vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const Json& j);
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

/// {"dimension": D, "states": [[[re,im],...],...], "labels": [...]}
Json to_json(const StateSet& s);
StateSet state_set_from_json(const Json& j);

/// {"dimension": D, "matrix": [[[re,im],...],...]}
Json to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const Json& j);

/// {"dimension": D, "operators": [...], "c_factor": [...], ...}
Json to_json(const KrausSet& ks);
KrausSet kraus_from_json(const Json& j);

Json to_json(const FeasibilityReport& rep);
Json to_json(const std::vector<StateTransformRecord>& records);
Json to_json(const CoherenceReport& rep);
Json to_json(const RoundtripRecord& rec);

/// Reads and parses a JSON file; throws Error(ParseError) on I/O or syntax failure.
Json read_json_file(const std::filesystem::path& path);

/// Pretty-printed with two-space indent and a trailing newline.
std::string dump(const Json& j);

}  // namespace qdet::io
