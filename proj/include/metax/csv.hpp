#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace metax {

// Minimal CSV support for the pipeline's flat numeric tables. Cells never
// contain commas or quotes; the first row is always a header.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t n_rows() const { return rows.size(); }
    std::size_t n_cols() const { return header.size(); }

    // Index of a header column; throws SchemaError when absent.
    std::size_t column_index(const std::string& name) const;

    const std::string& cell(std::size_t row, std::size_t col) const {
        return rows[row][col];
    }

    // Numeric cell access; throws ParseError naming row and column.
    double numeric(std::size_t row, std::size_t col) const;
};

CsvTable read_csv(std::istream& in, const std::string& source_name);
CsvTable read_csv_file(const std::string& path);

// Serializes a double with 17 significant digits, enough to round-trip.
std::string format_double(double v);

void write_csv_file(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows);

} // namespace metax
