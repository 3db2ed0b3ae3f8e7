#pragma once

#include <string>
#include <vector>

namespace machlab {

// Deterministic CSV writer: fixed column order, %.17g numeric formatting,
// '\n' line endings. Identical inputs produce bit-identical files.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns);

    void add_row(const std::vector<double>& values);
    void add_text_row(const std::vector<std::string>& values);

    std::string to_string() const;
    void write(const std::string& path) const;

    std::size_t rows() const { return rows_.size(); }
    const std::vector<std::string>& columns() const { return columns_; }

    static std::string format_number(double v);

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace machlab
