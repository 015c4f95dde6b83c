#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace critsqueeze::cli {

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    /// Extra key/value results (fit summaries); CSV prints them as trailing
    /// comment lines, JSON as a "summary" object.
    std::vector<std::pair<std::string, Cell>> summary;

    void add_row(std::vector<Cell> row);
};

struct OutputMeta {
    std::string version;
    std::string command;
    std::string config_hash;
    double tol = 0.0;
    unsigned long long seed = 0;
    /// Resolved parameters in key order.
    std::vector<std::pair<std::string, std::string>> params;
};

/// Header lines "# key: value", then the column row; floats with 12
/// significant digits.
void write_csv(std::ostream& out, const OutputMeta& meta, const Table& table);

/// {"meta": {...}, "columns": [...], "rows": [{...}, ...], "summary": {...}}
/// with unrounded numbers; non-finite values become null.
void write_json(std::ostream& out, const OutputMeta& meta, const Table& table);

}  // namespace critsqueeze::cli
