#include "machlab/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace machlab {

CsvTable::CsvTable(std::vector<std::string> columns)
    : columns_(std::move(columns)) {
    if (columns_.empty())
        throw std::invalid_argument("CsvTable: no columns");
}

std::string CsvTable::format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvTable::add_row(const std::vector<double>& values) {
    if (values.size() != columns_.size())
        throw std::invalid_argument("CsvTable: row width mismatch");
    std::vector<std::string> row;
    row.reserve(values.size());
    for (double v : values) row.push_back(format_number(v));
    rows_.push_back(std::move(row));
}

void CsvTable::add_text_row(const std::vector<std::string>& values) {
    if (values.size() != columns_.size())
        throw std::invalid_argument("CsvTable: row width mismatch");
    rows_.push_back(values);
}

std::string CsvTable::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) out += ',';
        out += columns_[i];
    }
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

void CsvTable::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("CsvTable: cannot open " + path);
    out << to_string();
    if (!out) throw std::runtime_error("CsvTable: write failed on " + path);
}

} // namespace machlab
