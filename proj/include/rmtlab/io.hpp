#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "exact.hpp"

namespace rmtlab {

using json = nlohmann::json;

inline constexpr int schema_version = 1;

/// Fixed 17 significant digits; non-finite values as nan/inf/-inf.
inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Accepts "p/q", integers and finite decimal literals, all converted exactly.
inline ExactScalar parse_exact(const std::string& s) {
    if (s.find('/') != std::string::npos) return parse_rational(s);
    auto dot = s.find('.');
    if (dot == std::string::npos) return parse_rational(s);
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (fp.empty() || fp.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("not a decimal literal: " + s);
    bool neg = !ip.empty() && ip[0] == '-';
    std::string mag = (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ? ip.substr(1) : ip;
    if (mag.empty()) mag = "0";
    ExactScalar v = parse_rational(mag + fp + "/1" + std::string(fp.size(), '0'));
    return neg ? ExactScalar(-v) : v;
}

inline double parse_real(const std::string& s) {
    try {
        return parse_exact(s).get_d();
    } catch (const std::invalid_argument&) {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("not a number: " + s);
        return v;
    }
}

/// Cells hold strings, integers, booleans or doubles; exact values go in as
/// fraction strings.
inline json cell(const ExactScalar& x) { return to_string(x); }

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;

    void add(std::vector<json> row) {
        if (row.size() != columns.size()) throw std::logic_error("table: row width does not match header");
        rows.push_back(std::move(row));
    }
};

namespace detail {

inline std::string scalar_text(const json& v) {
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// Compact dump with floats at 17 significant digits. Non-finite floats become
// strings so the document stays valid JSON.
inline void dump17(const json& v, std::string& out) {
    switch (v.type()) {
        case json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += json(it.key()).dump();
                out += ':';
                dump17(it.value(), out);
            }
            out += '}';
            break;
        }
        case json::value_t::array: {
            out += '[';
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out += ',';
                dump17(v[i], out);
            }
            out += ']';
            break;
        }
        case json::value_t::number_float: {
            double x = v.get<double>();
            out += std::isfinite(x) ? format_double(x) : json(format_double(x)).dump();
            break;
        }
        default: out += v.dump();
    }
}

}  // namespace detail

inline std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + detail::csv_field(t.columns[i]);
    out += '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + detail::csv_field(detail::scalar_text(r[i]));
        out += '\n';
    }
    return out;
}

inline std::string dump_json(const json& doc) {
    std::string out;
    detail::dump17(doc, out);
    out += '\n';
    return out;
}

/// {"schema": 1, "command": ..., "params": {...}, "columns": [...], "rows": [[...]], ...extra}
inline json table_document(const std::string& command, const json& params, const Table& t,
                           const json& extra = json::object()) {
    json doc = json::object();
    doc["schema"] = schema_version;
    doc["command"] = command;
    doc["params"] = params;
    doc["columns"] = t.columns;
    doc["rows"] = json::array();
    for (const auto& r : t.rows) doc["rows"].push_back(r);
    for (auto it = extra.begin(); it != extra.end(); ++it) doc[it.key()] = it.value();
    return doc;
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << text;
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace rmtlab
