#include "qwit/table_io.hpp"

#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace qwit {

void OutputTable::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::invalid_argument("row width does not match column count");
    }
    rows.push_back(std::move(row));
}

void OutputTable::add_meta(std::string key, std::string value) {
    meta.emplace_back(std::move(key), std::move(value));
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string cell_text(const Cell& c) {
    if (const auto* s = std::get_if<std::string>(&c)) {
        return *s;
    }
    if (const auto* d = std::get_if<double>(&c)) {
        return format_double(*d);
    }
    return std::to_string(std::get<std::int64_t>(c));
}

} // namespace

void write_csv(std::ostream& os, const OutputTable& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        os << (i ? "," : "") << table.columns[i];
    }
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << cell_text(row[i]);
        }
        os << "\n";
    }
    for (const auto& [key, value] : table.meta) {
        os << "# " << key << "=" << value << "\n";
    }
}

void write_json(std::ostream& os, const OutputTable& table) {
    nlohmann::ordered_json doc;
    doc["columns"] = table.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (const auto* s = std::get_if<std::string>(&row[i])) {
                obj[table.columns[i]] = *s;
            } else if (const auto* d = std::get_if<double>(&row[i])) {
                obj[table.columns[i]] = *d;
            } else {
                obj[table.columns[i]] = std::get<std::int64_t>(row[i]);
            }
        }
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    nlohmann::ordered_json meta;
    for (const auto& [key, value] : table.meta) {
        meta[key] = value;
    }
    doc["meta"] = std::move(meta);
    os << doc.dump(2) << "\n";
}

} // namespace qwit
