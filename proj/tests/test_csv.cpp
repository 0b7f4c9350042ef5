#include <doctest.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "tsq/csv.hpp"

using namespace tsq;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("tsq_csv_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }

  std::string write(const char* name, const std::string& content) const {
    auto file = path / name;
    std::ofstream out(file, std::ios::binary);
    out << content;
    return file.string();
  }
};

}  // namespace

TEST_CASE("read_csv parses headerless numeric rows") {
  TempDir dir;
  auto path = dir.write("plain.csv", "0,1.5\n100,2.5\n200,-3\n");
  auto table = read_csv(path);
  CHECK(table.timestamps == std::vector<int64_t>{0, 100, 200});
  REQUIRE(table.value_columns.size() == 1);
  CHECK(table.value_columns[0] == std::vector<double>{1.5, 2.5, -3.0});
}

TEST_CASE("read_csv skips a header line and tolerates padding") {
  TempDir dir;
  auto path = dir.write("header.csv",
                        "timestamp,value,extra\r\n"
                        "0 , 1.5 ,\t7\r\n"
                        "10,2.5,8\r\n");
  auto table = read_csv(path);
  CHECK(table.timestamps == std::vector<int64_t>{0, 10});
  REQUIRE(table.value_columns.size() == 2);
  CHECK(table.value_columns[0] == std::vector<double>{1.5, 2.5});
  CHECK(table.value_columns[1] == std::vector<double>{7.0, 8.0});
}

TEST_CASE("read_csv reports the offending line") {
  TempDir dir;
  auto ragged = dir.write("ragged.csv", "0,1\n1,2,3\n");
  CHECK_THROWS_WITH_AS(read_csv(ragged), doctest::Contains("ragged.csv:2"),
                       std::runtime_error);

  auto bad_value = dir.write("badvalue.csv", "0,1\n1,oops\n");
  CHECK_THROWS_WITH_AS(read_csv(bad_value), doctest::Contains(":2"),
                       std::runtime_error);

  auto lone = dir.write("lone.csv", "42\n");
  CHECK_THROWS_AS(read_csv(lone), std::runtime_error);

  auto empty = dir.write("empty.csv", "");
  CHECK_THROWS_AS(read_csv(empty), std::runtime_error);

  CHECK_THROWS_AS(read_csv((dir.path / "missing.csv").string()),
                  std::runtime_error);
}

TEST_CASE("read_csv rejects non-numeric data past the header") {
  TempDir dir;
  auto path = dir.write("twoheaders.csv", "a,b\nc,d\n0,1\n");
  CHECK_THROWS_AS(read_csv(path), std::runtime_error);
}

TEST_CASE("table_to_series and table_to_cloud pick the right columns") {
  TempDir dir;
  auto path = dir.write("wide.csv", "0,1,10\n1,2,20\n2,3,30\n");
  auto table = read_csv(path);

  auto series = table_to_series(table);
  CHECK(std::vector<int64_t>(series.timestamps().begin(),
                             series.timestamps().end()) ==
        std::vector<int64_t>{0, 1, 2});
  CHECK(std::vector<double>(series.values().begin(), series.values().end()) ==
        std::vector<double>{1.0, 2.0, 3.0});

  auto cloud = table_to_cloud(table);
  CHECK(cloud.dim() == 2);
  REQUIRE(cloud.size() == 3);
  CHECK(std::vector<double>(cloud.point(1).begin(), cloud.point(1).end()) ==
        std::vector<double>{2.0, 20.0});
}

TEST_CASE("format_double renders shortest round-trip decimals") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5) == "-2.5");
  CHECK(format_double(0.1) == "0.1");
  double parsed = std::stod(format_double(1.0 / 3.0));
  CHECK(parsed == 1.0 / 3.0);
}

TEST_CASE("atomic_write lands the full content at the target path") {
  TempDir dir;
  auto target = (dir.path / "out.bin").string();
  atomic_write(target, std::string("hello"));
  std::ifstream in(target, std::ios::binary);
  std::string got{std::istreambuf_iterator<char>(in),
                  std::istreambuf_iterator<char>()};
  CHECK(got == "hello");

  atomic_write(target, std::vector<uint8_t>{1, 2, 3});
  std::ifstream again(target, std::ios::binary);
  std::string raw{std::istreambuf_iterator<char>(again),
                  std::istreambuf_iterator<char>()};
  REQUIRE(raw.size() == 3);
  CHECK(raw[0] == 1);
  CHECK(raw[2] == 3);

  // No stray temp files left behind.
  size_t entries = 0;
  for ([[maybe_unused]] auto& e : std::filesystem::directory_iterator(dir.path)) {
    ++entries;
  }
  CHECK(entries == 1);
}
