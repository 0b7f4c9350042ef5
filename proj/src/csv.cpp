#include "tsq/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace tsq {

namespace {

[[noreturn]] void fail(const std::string& path, size_t line,
                       const std::string& message) {
  std::ostringstream out;
  out << path << ":" << line << ": " << message;
  throw std::runtime_error(out.str());
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool parse_i64(std::string_view s, int64_t& out) {
  s = trim(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_f64(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  CsvTable table;
  std::string line;
  size_t line_no = 0;
  size_t columns = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty()) continue;
    auto fields = split_fields(view);
    int64_t ts = 0;
    if (!parse_i64(fields[0], ts)) {
      if (table.timestamps.empty() && line_no == 1) continue;  // header
      fail(path, line_no, "column 1 is not an integer timestamp");
    }
    if (fields.size() < 2) fail(path, line_no, "need at least one value column");
    if (columns == 0) {
      columns = fields.size();
      table.value_columns.resize(columns - 1);
    } else if (fields.size() != columns) {
      fail(path, line_no, "inconsistent column count");
    }
    table.timestamps.push_back(ts);
    for (size_t c = 1; c < fields.size(); ++c) {
      double v = 0.0;
      if (!parse_f64(fields[c], v)) {
        fail(path, line_no, "column " + std::to_string(c + 1) + " is not a number");
      }
      table.value_columns[c - 1].push_back(v);
    }
  }
  if (table.timestamps.empty()) throw std::runtime_error(path + ": no data rows");
  return table;
}

TimeSeries table_to_series(const CsvTable& table) {
  return TimeSeries(table.timestamps, table.value_columns.front());
}

PointCloud table_to_cloud(const CsvTable& table) {
  const size_t dim = table.value_columns.size();
  const size_t n = table.timestamps.size();
  std::vector<double> data;
  data.reserve(dim * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t c = 0; c < dim; ++c) {
      data.push_back(table.value_columns[c][i]);
    }
  }
  return PointCloud(dim, std::move(data));
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

namespace {

void atomic_write_raw(const std::string& path, const char* data, size_t size) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(tmp + ": cannot open for writing");
    out.write(data, static_cast<std::streamsize>(size));
    if (!out) throw std::runtime_error(tmp + ": write failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error(path + ": rename failed");
  }
}

}  // namespace

void atomic_write(const std::string& path, const std::string& bytes) {
  atomic_write_raw(path, bytes.data(), bytes.size());
}

void atomic_write(const std::string& path, const std::vector<uint8_t>& bytes) {
  atomic_write_raw(path, reinterpret_cast<const char*>(bytes.data()),
                   bytes.size());
}

}  // namespace tsq
