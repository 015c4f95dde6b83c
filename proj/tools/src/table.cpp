#include "table.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace critsqueeze::cli {

namespace {

std::string fmt12(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return fmt12(*d);
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    return std::get<std::string>(c);
}

nlohmann::ordered_json json_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) return nullptr;
        return *d;
    }
    if (const auto* i = std::get_if<long long>(&c)) return *i;
    return std::get<std::string>(c);
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("Table::add_row: column count mismatch");
    rows.push_back(std::move(row));
}

void write_csv(std::ostream& out, const OutputMeta& meta, const Table& table) {
    out << "# critsqueeze " << meta.version << '\n';
    out << "# command: " << meta.command << '\n';
    out << "# config_hash: " << meta.config_hash << '\n';
    out << "# tol: " << fmt12(meta.tol) << '\n';
    out << "# seed: " << meta.seed << '\n';
    for (const auto& [k, v] : meta.params) out << "# param " << k << ": " << v << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
        out << '\n';
    }
    for (const auto& [k, v] : table.summary) out << "# summary " << k << ": " << csv_cell(v) << '\n';
}

void write_json(std::ostream& out, const OutputMeta& meta, const Table& table) {
    nlohmann::ordered_json doc;
    auto& m = doc["meta"];
    m["tool"] = "critsqueeze";
    m["version"] = meta.version;
    m["command"] = meta.command;
    m["config_hash"] = meta.config_hash;
    m["tol"] = meta.tol;
    m["seed"] = meta.seed;
    auto& params = m["params"];
    params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : meta.params) params[k] = v;
    doc["columns"] = table.columns;
    auto& rows = doc["rows"];
    rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json r;
        for (std::size_t i = 0; i < row.size(); ++i) r[table.columns[i]] = json_cell(row[i]);
        rows.push_back(std::move(r));
    }
    if (!table.summary.empty()) {
        auto& s = doc["summary"];
        for (const auto& [k, v] : table.summary) s[k] = json_cell(v);
    }
    out << doc.dump(2) << '\n';
}

}  // namespace critsqueeze::cli
