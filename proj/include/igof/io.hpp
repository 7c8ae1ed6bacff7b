#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "igof/bands.hpp"
#include "igof/estimate.hpp"
#include "igof/harness.hpp"
#include "igof/infer.hpp"
#include "igof/model.hpp"
#include "igof/points.hpp"
#include "igof/select.hpp"

namespace igof::io {

using Json = nlohmann::ordered_json;

/// Numeric CSV with a header row.
struct Table {
    std::vector<std::string> header;
    PointSet values;
};

/// Parses RFC-4180 numeric CSV. ParseError messages carry the line number.
[[nodiscard]] Table read_csv(std::istream& in, const std::string& source = "<input>");
[[nodiscard]] Table read_csv_file(const std::string& path);

/// Reorders columns to match the expected names; ParseError naming the first
/// missing column.
[[nodiscard]] PointSet select_columns(const Table& table, const std::vector<std::string>& names,
                                      const std::string& source = "<input>");

void write_csv(std::ostream& out, const std::vector<std::string>& header, const PointSet& values);
[[nodiscard]] std::string csv_field(const std::string& s);
[[nodiscard]] std::string format_double(double v);

/// Model documents.
[[nodiscard]] ModelSpec model_from_json(const Json& doc);
[[nodiscard]] Json model_to_json(const ModelSpec& model);
[[nodiscard]] ModelSpec read_model_file(const std::string& path);

[[nodiscard]] Json coefficients_to_json(const CoefficientSet& coeffs,
                                        const SelectionResult* selection = nullptr);
[[nodiscard]] CoefficientSet coefficients_from_json(const Json& doc);
[[nodiscard]] Json report_to_json(const DevianceReport& report, const CoefficientSet& coeffs);
[[nodiscard]] Json diagnostic_to_json(const std::vector<DiagnosticRow>& rows,
                                      const std::vector<std::string>& names);
void write_diagnostic_csv(std::ostream& out, const std::vector<DiagnosticRow>& rows,
                          const std::vector<std::string>& names);
[[nodiscard]] Json lkc_to_json(const LKCEstimate& lkc);

/// SVG heatmap of d_hat on a 2-D grid with the band classification outlined.
void write_band_svg(std::ostream& out, const FieldGrid& grid, const std::string& title);

/// Lowercase hex SHA-256 of a byte string / file contents.
[[nodiscard]] std::string sha256_hex(const std::string& bytes);
[[nodiscard]] std::string file_sha256(const std::string& path);
[[nodiscard]] std::string read_text_file(const std::string& path);

}  // namespace igof::io
