#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsq/core.hpp"
#include "tsq/coverage.hpp"

namespace tsq {

/// Parsed numeric CSV: column 1 is an integer epoch-ms timestamp, columns 2+
/// are values. A non-numeric first line is treated as a header and skipped.
struct CsvTable {
  std::vector<int64_t> timestamps;
  std::vector<std::vector<double>> value_columns;  // column-major
};

/// Throws std::runtime_error with file/line context on malformed input.
CsvTable read_csv(const std::string& path);

TimeSeries table_to_series(const CsvTable& table);   // uses value column 1
PointCloud table_to_cloud(const CsvTable& table);    // uses all value columns

/// Shortest round-trip decimal rendering (std::to_chars).
std::string format_double(double value);

/// Writes bytes to path atomically (temp file in the same directory + rename).
void atomic_write(const std::string& path, const std::string& bytes);
void atomic_write(const std::string& path, const std::vector<uint8_t>& bytes);

}  // namespace tsq
