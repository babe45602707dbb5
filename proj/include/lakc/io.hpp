#pragma once

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lakc/errors.hpp"
#include "lakc/format.hpp"
#include "lakc/harness.hpp"
#include "lakc/types.hpp"

namespace lakc {

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw io_error("read failure on " + path);
    return buf.str();
}

// Lines without their trailing \n / \r\n; accepts LF and CRLF endings.
inline std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t nl = text.find('\n', start);
        std::string_view line = nl == std::string_view::npos ? text.substr(start)
                                                             : text.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

struct Field {
    std::string_view text;   // trimmed
    std::size_t column = 0;  // 1-based column of the first trimmed character
};

inline std::vector<Field> split_fields(std::string_view line) {
    std::vector<Field> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        const std::size_t end = comma == std::string_view::npos ? line.size() : comma;
        std::size_t lo = start;
        std::size_t hi = end;
        while (lo < hi && (line[lo] == ' ' || line[lo] == '\t')) ++lo;
        while (hi > lo && (line[hi - 1] == ' ' || line[hi - 1] == '\t')) --hi;
        fields.push_back({line.substr(lo, hi - lo), lo + 1});
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

inline double parse_double_field(const Field& field, std::size_t line_no) {
    if (field.text.empty()) throw parse_error("empty field", line_no, field.column);
    double value = 0.0;
    const char* begin = field.text.data();
    const char* end = begin + field.text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw parse_error("malformed number '" + std::string(field.text) + "'", line_no,
                          field.column);
    }
    if (!std::isfinite(value)) {
        throw parse_error("non-finite value '" + std::string(field.text) + "'", line_no,
                          field.column);
    }
    return value;
}

}  // namespace detail

// CSV of points: one point per row, comma-separated decimal floats, all rows
// the same width. `skip_header` drops the first line unparsed.
inline Dataset parse_points(const std::string& path, bool skip_header = false) {
    const std::string text = detail::read_file(path);
    const auto lines = detail::split_lines(text);

    std::vector<double> flat;
    std::size_t d = 0;
    std::size_t rows = 0;
    for (std::size_t li = skip_header ? 1 : 0; li < lines.size(); ++li) {
        if (lines[li].empty()) continue;
        const auto fields = detail::split_fields(lines[li]);
        if (d == 0) {
            d = fields.size();
        } else if (fields.size() != d) {
            throw parse_error("row has " + std::to_string(fields.size()) + " fields, expected " +
                                  std::to_string(d),
                              li + 1, 1);
        }
        for (const auto& f : fields) flat.push_back(detail::parse_double_field(f, li + 1));
        ++rows;
    }
    if (rows == 0) throw parse_error("no data rows in " + path, 1, 1);
    return Dataset(std::move(flat), rows, d);
}

// CSV of labels: one 0-based integer id per row.
inline std::vector<int> parse_label_ids(const std::string& path, bool skip_header = false) {
    const std::string text = detail::read_file(path);
    const auto lines = detail::split_lines(text);

    std::vector<int> ids;
    for (std::size_t li = skip_header ? 1 : 0; li < lines.size(); ++li) {
        if (lines[li].empty()) continue;
        const auto fields = detail::split_fields(lines[li]);
        if (fields.size() != 1) {
            throw parse_error("expected a single label id per row", li + 1, 1);
        }
        const auto& f = fields.front();
        int value = 0;
        const char* begin = f.text.data();
        const char* end = begin + f.text.size();
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{} || ptr != end || value < 0) {
            throw parse_error("malformed label id '" + std::string(f.text) + "'", li + 1,
                              f.column);
        }
        ids.push_back(value);
    }
    if (ids.empty()) throw parse_error("no label rows in " + path, 1, 1);
    return ids;
}

// Labels with k inferred as max id + 1.
inline Labeling parse_labels(const std::string& path, bool skip_header = false) {
    auto ids = parse_label_ids(path, skip_header);
    int k = 0;
    for (int id : ids) k = std::max(k, id + 1);
    return Labeling(std::move(ids), k);
}

// Labels validated against a declared cluster count.
inline Labeling parse_labels(const std::string& path, int k, bool skip_header = false) {
    return Labeling(parse_label_ids(path, skip_header), k);
}

inline void write_points_csv(const std::string& path, const Dataset& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path + " for writing");
    for (std::size_t p = 0; p < data.size(); ++p) {
        const auto row = data.row(p);
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out << ',';
            out << format_g17(row[j]);
        }
        out << '\n';
    }
    if (!out) throw io_error("write failure on " + path);
}

inline void write_labels_csv(const std::string& path, const Labeling& labels) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path + " for writing");
    for (std::size_t p = 0; p < labels.size(); ++p) out << labels[p] << '\n';
    if (!out) throw io_error("write failure on " + path);
}

// ---------------------------------------------------------------------------
// JSON report
// ---------------------------------------------------------------------------

inline std::string json_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

// Report as a JSON object with a stable field order and 17-significant-digit
// floats, so identical runs serialize to identical bytes (wall_ms excepted,
// it measures the run it reports on).
inline std::string report_to_json(const ExperimentReport& report) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"algo\": \"" << json_escape(report.algo) << "\",\n";
    out << "  \"alpha\": " << format_g17(report.alpha) << ",\n";
    out << "  \"k\": " << report.k << ",\n";
    out << "  \"seed\": " << report.seed << ",\n";
    out << "  \"cost_vs_truth\": "
        << (report.cost_vs_truth ? format_g17(*report.cost_vs_truth) : "null") << ",\n";
    out << "  \"cost_min_assign\": " << format_g17(report.cost_min_assign) << ",\n";
    out << "  \"factor_bound\": "
        << (report.factor_bound ? format_g17(*report.factor_bound) : "null") << ",\n";
    out << "  \"centers\": [\n";
    for (std::size_t i = 0; i < report.centers.k(); ++i) {
        const auto row = report.centers.row(i);
        out << "    [";
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out << ", ";
            out << format_g17(row[j]);
        }
        out << (i + 1 < report.centers.k() ? "],\n" : "]\n");
    }
    out << "  ],\n";
    out << "  \"wall_ms\": " << format_g17(report.wall_ms) << ",\n";
    out << "  \"config\": {";
    for (std::size_t i = 0; i < report.config.size(); ++i) {
        if (i) out << ",";
        out << "\n    \"" << json_escape(report.config[i].first) << "\": \""
            << json_escape(report.config[i].second) << "\"";
    }
    out << (report.config.empty() ? "}\n" : "\n  }\n");
    out << "}\n";
    return out.str();
}

inline void emit_report(const ExperimentReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << report_to_json(report);
    if (!out) throw io_error("write failure on " + path);
}

}  // namespace lakc
