#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

// Tabular output shared by the CLI commands: a header row, one row per grid
// point, and a key=value metadata footer. CSV uses comma delimiters and full
// double precision (17 significant digits); JSON mirrors the rows as an array
// of objects. Output is byte-stable for identical inputs.

namespace qwit {

using Cell = std::variant<std::string, double, std::int64_t>;

struct OutputTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, std::string>> meta;

    void add_row(std::vector<Cell> row);
    void add_meta(std::string key, std::string value);
};

// %.17g rendering used for every double the CLI emits.
std::string format_double(double v);

void write_csv(std::ostream& os, const OutputTable& table);
void write_json(std::ostream& os, const OutputTable& table);

} // namespace qwit
