// table.hpp — Deterministic tabular output: CSV with '#' metadata, or JSON
//
// Every rendering starts with a schema-version line and the full resolved
// configuration; numeric cells are formatted with %.12g so identical inputs
// produce byte-identical files.

#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

namespace rabi {

inline constexpr const char* kSchemaVersion = "rabi-regimes/1";

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string format_number(int v) {
    return std::to_string(v);
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows; // empty cell = missing value

    std::vector<std::string>& add_row() {
        rows.emplace_back(columns.size());
        return rows.back();
    }
};

namespace detail {

inline std::string csv_escape(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace detail

inline std::string render_csv(const Table& table, const nlohmann::json& config,
                              const nlohmann::json& summary = nullptr) {
    std::string out;
    out += "# schema: ";
    out += kSchemaVersion;
    out += '\n';
    out += "# config: " + config.dump() + "\n";
    if (!summary.is_null()) out += "# summary: " + summary.dump() + "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += detail::csv_escape(table.columns[i]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += detail::csv_escape(row[i]);
        }
        out += '\n';
    }
    return out;
}

inline std::string render_json(const Table& table, const nlohmann::json& config,
                               const nlohmann::json& summary = nullptr) {
    nlohmann::json doc;
    doc["schema"] = kSchemaVersion;
    doc["config"] = config;
    if (!summary.is_null()) doc["summary"] = summary;
    doc["columns"] = table.columns;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& cell : row) {
            if (cell.empty())
                r.push_back(nullptr);
            else
                r.push_back(cell);
        }
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

} // namespace rabi
