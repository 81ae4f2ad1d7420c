#include "dsos/io.hpp"

#include "dsos/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace dsos {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text, std::size_t line, std::size_t column) {
    // from_chars rejects a leading '+', which to_chars never writes anyway.
    double x = 0.0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, x);
    if (res.ec != std::errc() || res.ptr != end || text.empty()) {
        throw ParseError("not a number: '" + std::string(text) + "'", line, column);
    }
    return x;
}

namespace {

std::vector<std::string_view> split_commas(std::string_view row) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = row.find(',', start);
        out.push_back(row.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

} // namespace

std::string to_csv(const CsvTable& t) {
    std::string out;
    for (std::size_t k = 0; k < t.header.size(); ++k) {
        out += (k ? "," : "") + t.header[k];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) {
                out += ',';
            }
            out += format_double(row[k]);
        }
        out += '\n';
    }
    return out;
}

CsvTable parse_csv(std::string_view text, const std::vector<std::string>& expected) {
    CsvTable t;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            nl = text.size();
        }
        auto row = text.substr(start, nl - start);
        start = nl + 1;
        ++line_no;
        if (!row.empty() && row.back() == '\r') {
            row.remove_suffix(1);
        }
        if (row.empty()) {
            continue;
        }
        const auto fields = split_commas(row);
        if (t.header.empty()) {
            for (auto f : fields) {
                t.header.emplace_back(f);
            }
            if (!expected.empty() && t.header != expected) {
                std::string want;
                for (const auto& h : expected) {
                    want += (want.empty() ? "" : ",") + h;
                }
                throw ParseError("unexpected CSV header '" + std::string(row) + "', expected '" + want + "'", line_no, 1);
            }
            continue;
        }
        if (fields.size() != t.header.size()) {
            throw ParseError("expected " + std::to_string(t.header.size()) + " fields, found " +
                                 std::to_string(fields.size()),
                             line_no, 1);
        }
        std::vector<double> values;
        std::size_t col = 1;
        for (auto f : fields) {
            values.push_back(parse_double(f, line_no, col));
            col += f.size() + 1;
        }
        t.rows.push_back(std::move(values));
    }
    if (t.header.empty()) {
        throw ParseError("empty CSV input", 1, 1);
    }
    return t;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InvalidInput("cannot open for writing: " + path);
    }
    out << text;
    if (!out) {
        throw InvalidInput("write failed: " + path);
    }
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidInput("cannot open for reading: " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_csv(const std::string& path, const CsvTable& t) { write_text(path, to_csv(t)); }

CsvTable read_csv(const std::string& path, const std::vector<std::string>& expected) {
    return parse_csv(read_text(path), expected);
}

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        // Translate the byte offset into line/column.
        std::size_t line = 1;
        std::size_t column = 1;
        const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t k = 0; k < upto; ++k) {
            if (text[k] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError(std::string("invalid JSON: ") + e.what(), line, column);
    }
}

void write_json(const std::string& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

Json read_json(const std::string& path) { return parse_json(read_text(path)); }

namespace {

[[noreturn]] void schema_error(const std::string& what) { throw ParseError("schema: " + what, 0, 0); }

int read_n(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
        schema_error("expected an object with integer field 'n'");
    }
    const int n = j["n"].get<int>();
    if (n < 1) {
        schema_error("'n' must be positive");
    }
    return n;
}

std::vector<double> read_reals(const Json& row, const std::string& where) {
    if (!row.is_array()) {
        schema_error(where + " is not an array");
    }
    std::vector<double> out;
    for (const auto& v : row) {
        if (!v.is_number()) {
            schema_error(where + " holds a non-number");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

} // namespace

Json grid_to_json(const GridConfig& g) {
    Json j;
    j["n"] = g.n;
    j["heights"] = g.rows();
    return j;
}

GridConfig grid_from_json(const Json& j) {
    const int n = read_n(j);
    if (!j.contains("heights") || !j["heights"].is_array() || j["heights"].size() != static_cast<std::size_t>(n)) {
        schema_error("'heights' must hold n rows");
    }
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < j["heights"].size(); ++i) {
        auto r = read_reals(j["heights"][i], "heights[" + std::to_string(i) + "]");
        if (r.size() != static_cast<std::size_t>(n)) {
            schema_error("heights[" + std::to_string(i) + "] must hold n values");
        }
        rows.push_back(std::move(r));
    }
    return GridConfig::from_rows(rows);
}

Json lines_to_json(const LineSystem& ls) {
    Json j;
    j["n"] = ls.n;
    j["lines"] = ls.lines;
    return j;
}

LineSystem lines_from_json(const Json& j) {
    const int n = read_n(j);
    if (!j.contains("lines") || !j["lines"].is_array() || j["lines"].size() != static_cast<std::size_t>(2 * n - 1)) {
        schema_error("'lines' must hold 2n-1 lines");
    }
    LineSystem ls;
    ls.n = n;
    for (int l = 1; l <= 2 * n - 1; ++l) {
        auto r = read_reals(j["lines"][l - 1], "lines[" + std::to_string(l - 1) + "]");
        if (static_cast<int>(r.size()) != line_size(n, l)) {
            schema_error("line " + std::to_string(l) + " must hold " + std::to_string(line_size(n, l)) + " values");
        }
        ls.lines.push_back(std::move(r));
    }
    return ls;
}

CsvTable ecdf_table(const std::vector<EcdfPoint>& e) {
    CsvTable t{{"value", "cdf"}, {}};
    for (const auto& p : e) {
        t.rows.push_back({p.value, p.cdf});
    }
    return t;
}

std::vector<EcdfPoint> ecdf_from_table(const CsvTable& t) {
    if (t.header != std::vector<std::string>{"value", "cdf"}) {
        throw ParseError("ECDF table must have columns value,cdf", 1, 1);
    }
    std::vector<EcdfPoint> e;
    for (const auto& r : t.rows) {
        e.push_back({r[0], r[1]});
    }
    return e;
}

void write_ecdf(const std::string& path, const std::vector<EcdfPoint>& e) { write_csv(path, ecdf_table(e)); }

std::vector<EcdfPoint> read_ecdf(const std::string& path) {
    return ecdf_from_table(read_csv(path, {"value", "cdf"}));
}

CsvTable surface_table(const std::vector<SurfacePoint>& pts) {
    CsvTable t{{"x", "y", "h"}, {}};
    for (const auto& p : pts) {
        t.rows.push_back({p.x, p.y, p.h});
    }
    return t;
}

CsvTable one_point_table(const KernelContext& ctx, const std::vector<int>& lines, const std::vector<double>& us) {
    CsvTable t{{"line", "u", "density"}, {}};
    for (int l : lines) {
        for (double u : us) {
            t.rows.push_back({static_cast<double>(l), u, one_point_density(ctx, l, u)});
        }
    }
    return t;
}

Json e0_to_json(const std::vector<GapRequest>& requests, const GapResult& r) {
    Json j;
    j["requests"] = Json::array();
    for (const auto& q : requests) {
        j["requests"].push_back({{"line", q.line}, {"u", q.u}});
    }
    j["value"] = r.value;
    j["nodes"] = r.nodes;
    return j;
}

} // namespace dsos
