#pragma once

#include <string>

#include <json.hpp>

#include "geninv/examples.hpp"
#include "geninv/harness.hpp"

namespace geninv {

/// Parses a complex literal of the form "x", "yi", "x+yi" or "x-yi"
/// (also accepting 'j' and surrounding whitespace).
Complex parse_complex(const std::string& text);

/// Compact complex rendering: "0", "1.5", "2i", "1.5-2i".
std::string format_complex(Complex value, int precision = 12);

/// Reads a matrix from disk. JSON documents carry fields rows, cols and
/// data (row-major [re, im] pairs; bare numbers are accepted as reals);
/// anything else is treated as CSV with complex "x+yi" entries.
Matrix read_matrix_file(const std::string& path);

/// Writes the JSON document format.
void write_matrix_file(const std::string& path, const Matrix& m);

Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Matrix& m);

nlohmann::json to_json(const ConditionReport& rep);
nlohmann::json to_json(const BoundBreakdown& bound);
nlohmann::json to_json(const PerturbResult& result);
nlohmann::json to_json(const DrazinResult& result);
nlohmann::json to_json(const GenSpec& spec);
nlohmann::json to_json(const TrialRecord& record);
nlohmann::json to_json(const BatchSummary& summary);
nlohmann::json to_json(const ExampleReport& report);

/// Aligned, human-readable matrix table.
std::string render_matrix(const Matrix& m, int precision = 6);

}  // namespace geninv
