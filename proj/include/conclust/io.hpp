#pragma once

// Text formats: categorical CSV ingestion, the label-matrix file, edge
// lists, clustering files, and run reports. Readers reject malformed input
// with the 1-based line number; writers produce byte-deterministic output.

#include <charconv>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <unordered_map>
#include <vector>

#include "core.hpp"
#include "objective.hpp"

namespace conclust {

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// Lines split on '\n'; a trailing '\r' is stripped so CRLF input works. A
// final empty fragment after the last newline is not a line.
inline std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find('\n', start);
        std::string_view line = (end == std::string_view::npos)
                                    ? text.substr(start)
                                    : text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (end == std::string_view::npos) {
            if (!line.empty()) lines.push_back(line);
            break;
        }
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

// Whitespace-separated tokens (spaces and tabs).
inline std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

template <class T>
T parse_unsigned(std::string_view token, std::size_t line_no, const char* what) {
    T value{};
    const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
    if (result.ec != std::errc{} || result.ptr != token.data() + token.size())
        throw ParseError("line " + std::to_string(line_no) + ": invalid " + what + " '" +
                         std::string(token) + "'");
    return value;
}

inline double parse_real(std::string_view token, std::size_t line_no, const char* what) {
    double value = 0.0;
    const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
    if (result.ec != std::errc{} || result.ptr != token.data() + token.size())
        throw ParseError("line " + std::to_string(line_no) + ": invalid " + what + " '" +
                         std::string(token) + "'");
    return value;
}

// Shortest decimal representation that round-trips exactly.
inline std::string format_double(double value) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, result.ptr);
}

} // namespace detail

// Categorical CSV to label matrix. Every distinct string in a kept column is
// its own category; "?" and the empty string are ordinary categories, not
// missing-data markers. Column indices in drop_columns refer to the original
// file. All rows must have the same field count as the first line.
inline LabelMatrix ingest_categorical(std::string_view csv_text,
                                      const std::set<std::size_t>& drop_columns,
                                      bool has_header) {
    const auto lines = detail::split_lines(csv_text);
    if (lines.empty()) throw ParseError("empty input");

    const std::size_t width = detail::split_fields(lines[0]).size();
    std::vector<std::size_t> kept;
    for (std::size_t col = 0; col < width; ++col)
        if (!drop_columns.contains(col)) kept.push_back(col);
    if (kept.empty()) throw ParseError("no columns left after dropping");
    for (std::size_t col : drop_columns)
        if (col >= width)
            throw ParseError("drop column " + std::to_string(col) + " out of range for " +
                             std::to_string(width) + " columns");

    const std::size_t first_row = has_header ? 1 : 0;
    if (lines.size() <= first_row) throw ParseError("no data rows");

    const std::size_t n = lines.size() - first_row;
    const std::size_t k = kept.size();
    std::vector<Label> data(n * k);
    std::vector<std::unordered_map<std::string_view, Label>> categories(k);

    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t line_no = first_row + r + 1;
        const auto fields = detail::split_fields(lines[first_row + r]);
        if (fields.size() != width)
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(width) + " fields, got " +
                             std::to_string(fields.size()));
        for (std::size_t j = 0; j < k; ++j) {
            auto& dict = categories[j];
            const auto [it, inserted] =
                dict.emplace(fields[kept[j]], static_cast<Label>(dict.size()));
            data[r * k + j] = it->second;
        }
    }
    return LabelMatrix(n, k, std::move(data));
}

// Label-matrix file: header "n k", then n lines of k nonnegative integers.
inline LabelMatrix read_label_matrix(std::string_view text) {
    const auto lines = detail::split_lines(text);
    if (lines.empty()) throw ParseError("empty input");
    const auto header = detail::split_tokens(lines[0]);
    if (header.size() != 2)
        throw ParseError("line 1: expected header 'n k'");
    const auto n = detail::parse_unsigned<std::size_t>(header[0], 1, "node count");
    const auto k = detail::parse_unsigned<std::size_t>(header[1], 1, "column count");
    if (n == 0 || k == 0) throw ParseError("line 1: dimensions must be positive");
    if (lines.size() != n + 1)
        throw ParseError("expected " + std::to_string(n) + " data rows, got " +
                         std::to_string(lines.size() - 1));
    std::vector<Label> data(n * k);
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t line_no = r + 2;
        const auto tokens = detail::split_tokens(lines[r + 1]);
        if (tokens.size() != k)
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(k) + " labels, got " + std::to_string(tokens.size()));
        for (std::size_t j = 0; j < k; ++j)
            data[r * k + j] = detail::parse_unsigned<Label>(tokens[j], line_no, "label");
    }
    return LabelMatrix(n, k, std::move(data));
}

inline std::string write_label_matrix(const LabelMatrix& m) {
    std::string out = std::to_string(m.nodes()) + " " + std::to_string(m.columns()) + "\n";
    for (std::size_t v = 0; v < m.nodes(); ++v) {
        const auto row = m.row(static_cast<NodeId>(v));
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out += ' ';
            out += std::to_string(row[j]);
        }
        out += '\n';
    }
    return out;
}

// Edge list: one "u v" pair per line, 0-based, u != v, both below n. Blank
// lines are ignored; duplicates collapse in the adjacency.
inline std::vector<std::pair<NodeId, NodeId>> read_edge_list(std::string_view text,
                                                             std::size_t n) {
    const auto lines = detail::split_lines(text);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        const auto tokens = detail::split_tokens(lines[i]);
        if (tokens.empty()) continue;
        if (tokens.size() != 2)
            throw ParseError("line " + std::to_string(line_no) + ": expected 'u v'");
        const auto u = detail::parse_unsigned<NodeId>(tokens[0], line_no, "endpoint");
        const auto v = detail::parse_unsigned<NodeId>(tokens[1], line_no, "endpoint");
        if (u == v) throw ParseError("line " + std::to_string(line_no) + ": self loop");
        if (u >= n || v >= n)
            throw ParseError("line " + std::to_string(line_no) + ": endpoint out of range for " +
                             std::to_string(n) + " nodes");
        edges.emplace_back(u, v);
    }
    return edges;
}

// Clustering file: one label per line; labels are canonicalized on read.
inline Clustering read_clustering(std::string_view text) {
    const auto lines = detail::split_lines(text);
    std::vector<Label> labels;
    labels.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto tokens = detail::split_tokens(lines[i]);
        if (tokens.empty()) continue;
        if (tokens.size() != 1)
            throw ParseError("line " + std::to_string(i + 1) + ": expected one label");
        labels.push_back(detail::parse_unsigned<Label>(tokens[0], i + 1, "label"));
    }
    if (labels.empty()) throw ParseError("empty clustering");
    return normalize(labels);
}

inline std::string write_clustering(const Clustering& c) {
    std::string out;
    for (Label l : c.labels) {
        out += std::to_string(l);
        out += '\n';
    }
    return out;
}

// One consensus invocation at a fixed column budget.
struct RunReport {
    std::string algorithm;
    std::size_t columns_used = 0;  // R
    std::uint64_t seed = 0;
    std::size_t runs = 0;
    std::vector<Cost> disagreements;       // one per run
    std::vector<double> wall_ms;           // one per run
    std::optional<double> ratio_to_full;   // clamped-mean ratio vs the full column set

    bool operator==(const RunReport&) const = default;
};

// Key-value text form, one key per line, list values space separated.
// Real numbers use shortest round-trip formatting, so read(write(r)) == r.
inline std::string write_report(const RunReport& r) {
    std::string out;
    out += "algorithm " + r.algorithm + "\n";
    out += "R " + std::to_string(r.columns_used) + "\n";
    out += "seed " + std::to_string(r.seed) + "\n";
    out += "runs " + std::to_string(r.runs) + "\n";
    out += "disagreements";
    for (Cost d : r.disagreements) out += " " + std::to_string(d);
    out += "\nwall_ms";
    for (double t : r.wall_ms) out += " " + detail::format_double(t);
    out += "\n";
    if (r.ratio_to_full)
        out += "ratio_to_full " + detail::format_double(*r.ratio_to_full) + "\n";
    return out;
}

inline RunReport read_report(std::string_view text) {
    const auto lines = detail::split_lines(text);
    RunReport r;
    bool saw_algorithm = false, saw_r = false, saw_seed = false, saw_runs = false,
         saw_disagreements = false, saw_wall = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        const auto tokens = detail::split_tokens(lines[i]);
        if (tokens.empty()) continue;
        const std::string_view key = tokens[0];
        if (key == "algorithm") {
            if (tokens.size() != 2) throw ParseError("line " + std::to_string(line_no) + ": bad algorithm");
            r.algorithm = std::string(tokens[1]);
            saw_algorithm = true;
        } else if (key == "R") {
            if (tokens.size() != 2) throw ParseError("line " + std::to_string(line_no) + ": bad R");
            r.columns_used = detail::parse_unsigned<std::size_t>(tokens[1], line_no, "R");
            saw_r = true;
        } else if (key == "seed") {
            if (tokens.size() != 2) throw ParseError("line " + std::to_string(line_no) + ": bad seed");
            r.seed = detail::parse_unsigned<std::uint64_t>(tokens[1], line_no, "seed");
            saw_seed = true;
        } else if (key == "runs") {
            if (tokens.size() != 2) throw ParseError("line " + std::to_string(line_no) + ": bad runs");
            r.runs = detail::parse_unsigned<std::size_t>(tokens[1], line_no, "runs");
            saw_runs = true;
        } else if (key == "disagreements") {
            for (std::size_t j = 1; j < tokens.size(); ++j)
                r.disagreements.push_back(
                    static_cast<Cost>(detail::parse_unsigned<std::uint64_t>(tokens[j], line_no, "disagreement")));
            saw_disagreements = true;
        } else if (key == "wall_ms") {
            for (std::size_t j = 1; j < tokens.size(); ++j)
                r.wall_ms.push_back(detail::parse_real(tokens[j], line_no, "time"));
            saw_wall = true;
        } else if (key == "ratio_to_full") {
            if (tokens.size() != 2) throw ParseError("line " + std::to_string(line_no) + ": bad ratio");
            r.ratio_to_full = detail::parse_real(tokens[1], line_no, "ratio");
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": unknown key '" +
                             std::string(key) + "'");
        }
    }
    if (!saw_algorithm || !saw_r || !saw_seed || !saw_runs || !saw_disagreements || !saw_wall)
        throw ParseError("report is missing required keys");
    if (r.disagreements.size() != r.runs || r.wall_ms.size() != r.runs)
        throw ParseError("report run count does not match its lists");
    return r;
}

} // namespace conclust
