#pragma once

#include "dsos/kernel.hpp"
#include "dsos/limit_shape.hpp"
#include "dsos/model.hpp"
#include "dsos/stats.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace dsos {

using Json = nlohmann::ordered_json;

/// Shortest decimal that reads back to the same double.
std::string format_double(double x);

/// Strict full-field parse; `line` and `column` locate the field in error messages.
double parse_double(std::string_view text, std::size_t line = 0, std::size_t column = 0);

/// A numeric CSV file: one header row, then rows of reals.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    bool operator==(const CsvTable&) const = default;
};

std::string to_csv(const CsvTable& t);
/// Rejects a header different from `expected` (when nonempty) and ragged rows.
CsvTable parse_csv(std::string_view text, const std::vector<std::string>& expected = {});

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

void write_csv(const std::string& path, const CsvTable& t);
CsvTable read_csv(const std::string& path, const std::vector<std::string>& expected = {});

/// Parses JSON text; syntax errors become ParseError with line and column.
Json parse_json(std::string_view text);
void write_json(const std::string& path, const Json& j);
Json read_json(const std::string& path);

/// {"n": N, "heights": [[...], ...]}
Json grid_to_json(const GridConfig& g);
GridConfig grid_from_json(const Json& j);

/// {"n": N, "lines": [[...], ...]} with line l at index l-1.
Json lines_to_json(const LineSystem& ls);
LineSystem lines_from_json(const Json& j);

/// columns value,cdf
CsvTable ecdf_table(const std::vector<EcdfPoint>& e);
std::vector<EcdfPoint> ecdf_from_table(const CsvTable& t);
void write_ecdf(const std::string& path, const std::vector<EcdfPoint>& e);
std::vector<EcdfPoint> read_ecdf(const std::string& path);

/// columns x,y,h
CsvTable surface_table(const std::vector<SurfacePoint>& pts);

/// columns line,u,density
CsvTable one_point_table(const KernelContext& ctx, const std::vector<int>& lines, const std::vector<double>& us);

/// {"requests": [{"line", "u"}], "value", "nodes"}
Json e0_to_json(const std::vector<GapRequest>& requests, const GapResult& r);

} // namespace dsos
