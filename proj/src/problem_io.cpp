#include "hre/problem_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hre/errors.hpp"

namespace hre {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view trimmed(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

void check_names(const std::vector<std::string>& names, const char* field) {
    std::set<std::string_view> seen;
    for (const std::string& name : names) {
        if (name.empty()) throw SchemaError(field, "alternative names must be non-empty");
        if (!seen.insert(name).second)
            throw SchemaError(field, "alternative name \"" + name + "\" repeats");
    }
    if (names.empty()) throw SchemaError(field, "no alternatives");
}

void check_cell_value(double v, const char* field, std::size_t i, std::size_t j) {
    if (!(v > 0.0) || std::isinf(v) || std::isnan(v)) {
        std::ostringstream msg;
        msg << "cell (" << i + 1 << "," << j + 1 << ") must be a positive finite number";
        throw SchemaError(field, msg.str());
    }
}

// Line/column of a byte offset, for pointing at JSON parse failures.
std::pair<std::size_t, std::size_t> locate(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

double parse_number(std::string_view text, std::size_t line, std::size_t column) {
    double value = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end)
        throw ParseError("\"" + std::string(text) + "\" is not a number", line, column);
    return value;
}

// One CSV cell: "?", a decimal, or an exact fraction "a/b".
Cell parse_cell(std::string_view text, std::size_t line, std::size_t column) {
    text = trimmed(text);
    if (text.empty())
        throw ParseError("empty cell (use \"?\" for a missing comparison)", line, column);
    if (text == "?") return std::nullopt;
    const std::size_t slash = text.find('/');
    if (slash != std::string_view::npos) {
        const double num = parse_number(trimmed(text.substr(0, slash)), line, column);
        const double den = parse_number(trimmed(text.substr(slash + 1)), line, column);
        if (den == 0.0) throw ParseError("fraction with zero denominator", line, column);
        return num / den;
    }
    return parse_number(text, line, column);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

bool is_comment_or_blank(std::string_view line) {
    const std::string_view t = trimmed(line);
    return t.empty() || t.front() == '#';
}

// Shortest round-trip decimal form, so serialize -> parse is exact.
std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace

ProblemFile parse_problem_json(std::istream& in) {
    std::string text(std::istreambuf_iterator<char>(in), {});
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = locate(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(e.what(), line, col);
    }
    if (!doc.is_object()) throw SchemaError("$", "top level must be an object");

    ProblemFile f;
    if (!doc.contains("alternatives") || !doc["alternatives"].is_array())
        throw SchemaError("alternatives", "required array of names");
    for (const json& name : doc["alternatives"]) {
        if (!name.is_string()) throw SchemaError("alternatives", "names must be strings");
        f.alternatives.push_back(name.get<std::string>());
    }
    check_names(f.alternatives, "alternatives");
    const std::size_t n = f.alternatives.size();

    if (!doc.contains("matrix") || !doc["matrix"].is_array())
        throw SchemaError("matrix", "required array of rows");
    const json& rows = doc["matrix"];
    if (rows.size() != n)
        throw SchemaError("matrix", "expected " + std::to_string(n) + " rows, got " +
                                        std::to_string(rows.size()));
    f.matrix.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const json& row = rows[i];
        if (!row.is_array() || row.size() != n)
            throw SchemaError("matrix", "row " + std::to_string(i + 1) + " must hold " +
                                            std::to_string(n) + " cells");
        for (std::size_t j = 0; j < n; ++j) {
            const json& cell = row[j];
            if (cell.is_null()) {
                f.matrix.emplace_back(std::nullopt);
            } else if (cell.is_number()) {
                const double v = cell.get<double>();
                check_cell_value(v, "matrix", i, j);
                f.matrix.emplace_back(v);
            } else {
                std::ostringstream msg;
                msg << "cell (" << i + 1 << "," << j + 1 << ") must be a number or null";
                throw SchemaError("matrix", msg.str());
            }
        }
    }

    if (doc.contains("reference")) {
        const json& ref = doc["reference"];
        if (!ref.is_object()) throw SchemaError("reference", "must map names to weights");
        for (const auto& [name, weight] : ref.items()) {
            if (!weight.is_number())
                throw SchemaError("reference", "weight for \"" + name + "\" must be a number");
            add_reference(f, name, weight.get<double>());
        }
    }
    return f;
}

ProblemFile parse_problem_csv(std::istream& in) {
    ProblemFile f;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::size_t rows_read = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_comment_or_blank(line)) continue;
        const std::vector<std::string_view> fields = split_fields(line);
        if (!have_header) {
            for (const std::string_view name : fields)
                f.alternatives.emplace_back(trimmed(name));
            check_names(f.alternatives, "header");
            f.matrix.reserve(f.alternatives.size() * f.alternatives.size());
            have_header = true;
            continue;
        }
        const std::size_t n = f.alternatives.size();
        if (rows_read == n)
            throw ParseError("matrix already has " + std::to_string(n) + " rows", line_no, 1);
        if (fields.size() != n)
            throw ParseError("expected " + std::to_string(n) + " cells, got " +
                                 std::to_string(fields.size()),
                             line_no, 1);
        for (std::size_t j = 0; j < n; ++j) {
            const Cell c = parse_cell(fields[j], line_no, j + 1);
            if (c.has_value()) check_cell_value(*c, "matrix", rows_read, j);
            f.matrix.push_back(c);
        }
        ++rows_read;
    }
    if (!have_header) throw ParseError("no header row of alternative names", line_no, 1);
    if (rows_read != f.alternatives.size())
        throw ParseError("matrix has " + std::to_string(rows_read) + " rows, expected " +
                             std::to_string(f.alternatives.size()),
                         line_no, 1);
    return f;
}

ProblemFile parse_problem(std::istream& in, FileFormat format) {
    return format == FileFormat::Json ? parse_problem_json(in) : parse_problem_csv(in);
}

ProblemFile parse_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open \"" + path + "\"");
    const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
    return parse_problem(in, csv ? FileFormat::Csv : FileFormat::Json);
}

std::vector<std::pair<std::string, double>> parse_reference_csv(std::istream& in) {
    std::vector<std::pair<std::string, double>> refs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_comment_or_blank(line)) continue;
        const std::vector<std::string_view> fields = split_fields(line);
        if (fields.size() != 2)
            throw ParseError("expected \"name,weight\"", line_no, 1);
        refs.emplace_back(std::string(trimmed(fields[0])),
                          parse_number(trimmed(fields[1]), line_no, 2));
    }
    return refs;
}

void apply_upper_triangle(ProblemFile& f) {
    const std::size_t n = f.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Cell& up = f.matrix[i * n + j];
            f.matrix[j * n + i] = up.has_value() ? Cell(1.0 / *up) : std::nullopt;
        }
    }
}

void add_reference(ProblemFile& f, const std::string& name, double weight) {
    const auto pos = std::find(f.alternatives.begin(), f.alternatives.end(), name);
    if (pos == f.alternatives.end())
        throw SchemaError("reference", "\"" + name + "\" is not an alternative");
    for (const auto& [existing, _] : f.reference)
        if (existing == name)
            throw SchemaError("reference", "weight for \"" + name + "\" given twice");
    if (!(weight > 0.0) || std::isinf(weight) || std::isnan(weight))
        throw SchemaError("reference", "weight for \"" + name + "\" must be positive");
    f.reference.emplace_back(name, weight);
    std::sort(f.reference.begin(), f.reference.end(),
              [&](const auto& a, const auto& b) {
                  return std::find(f.alternatives.begin(), f.alternatives.end(), a.first) <
                         std::find(f.alternatives.begin(), f.alternatives.end(), b.first);
              });
}

std::string write_json(const ProblemFile& f) {
    ordered_json doc;
    doc["alternatives"] = f.alternatives;
    ordered_json rows = ordered_json::array();
    const std::size_t n = f.size();
    for (std::size_t i = 0; i < n; ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < n; ++j) {
            const Cell& c = f.at(i, j);
            if (c.has_value())
                row.push_back(*c);
            else
                row.push_back(nullptr);
        }
        rows.push_back(std::move(row));
    }
    doc["matrix"] = std::move(rows);
    if (!f.reference.empty()) {
        ordered_json ref = ordered_json::object();
        for (const auto& [name, weight] : f.reference) ref[name] = weight;
        doc["reference"] = std::move(ref);
    }
    return doc.dump(2) + "\n";
}

std::string write_csv(const ProblemFile& f) {
    std::ostringstream out;
    const std::size_t n = f.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i) out << ',';
        const std::string& name = f.alternatives[i];
        if (name.find(',') != std::string::npos || name == "?" || name.front() == '#')
            throw SchemaError("alternatives", "\"" + name + "\" cannot be written as CSV");
        out << name;
    }
    out << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j) out << ',';
            const Cell& c = f.at(i, j);
            out << (c.has_value() ? format_double(*c) : "?");
        }
        out << '\n';
    }
    return out.str();
}

PCMatrix to_matrix(const ProblemFile& f) {
    const std::size_t n = f.size();
    std::vector<std::vector<Cell>> rows(n, std::vector<Cell>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rows[i][j] = f.at(i, j);
    return PCMatrix::from_rows(rows, f.alternatives);
}

HreProblem to_problem(const ProblemFile& f) {
    if (f.reference.empty())
        throw SchemaError("reference", "ranking needs at least one reference weight");
    std::map<std::size_t, double> ref_weights;
    std::set<std::string> ref_names;
    for (const auto& [name, weight] : f.reference) {
        const auto pos = std::find(f.alternatives.begin(), f.alternatives.end(), name);
        ref_weights[static_cast<std::size_t>(pos - f.alternatives.begin())] = weight;
        ref_names.insert(name);
    }
    std::vector<std::size_t> unknowns;
    for (std::size_t i = 0; i < f.alternatives.size(); ++i)
        if (!ref_names.count(f.alternatives[i])) unknowns.push_back(i);
    if (unknowns.empty())
        throw SchemaError("reference", "every alternative has a weight; nothing to rank");
    return HreProblem(to_matrix(f), std::move(unknowns), ref_weights);
}

}  // namespace hre
