#include <doctest.h>

#include <random>
#include <stdexcept>

#include "tsq/metrics.hpp"
#include "tsq/runlength.hpp"

using namespace tsq;

namespace {

QuantizedSeries make_quantized(std::vector<int64_t> ts, std::vector<double> values) {
  std::vector<double> levels(values.begin(), values.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  size_t n = values.size();
  return QuantizedSeries(std::move(ts), std::move(values), Codebook(levels),
                         std::vector<bool>(n, false));
}

}  // namespace

TEST_CASE("compress keeps the first point of each run") {
  auto q = make_quantized({1, 2, 3, 4, 5}, {7.0, 7.0, 9.0, 9.0, 7.0});
  auto c = compress(q);
  REQUIRE(c.size() == 3);
  CHECK(c.points()[0] == ChangePoint{1, 7.0});
  CHECK(c.points()[1] == ChangePoint{3, 9.0});
  CHECK(c.points()[2] == ChangePoint{5, 7.0});
  CHECK(c.original_length() == 5);
  CHECK(c.original_last_timestamp() == 5);
}

TEST_CASE("compress collapses a constant series to one point") {
  auto q = make_quantized({10, 20, 30}, {4.0, 4.0, 4.0});
  auto c = compress(q);
  CHECK(c.size() == 1);
  CHECK(c.points()[0] == ChangePoint{10, 4.0});
}

TEST_CASE("compress of a single sample") {
  auto q = make_quantized({42}, {1.5});
  auto c = compress(q);
  CHECK(c.size() == 1);
  CHECK(c.original_length() == 1);
}

TEST_CASE("decompress expands by carrying the last observation forward") {
  CompressedSeries c({{1, 7.0}, {3, 9.0}, {5, 7.0}}, 5, 5);
  std::vector<int64_t> grid{1, 2, 3, 4, 5};
  auto values = decompress(c, grid);
  CHECK(values == std::vector<double>{7.0, 7.0, 9.0, 9.0, 7.0});
}

TEST_CASE("decompress rejects inconsistent grids") {
  CompressedSeries c({{1, 7.0}, {3, 9.0}}, 4, 4);
  std::vector<int64_t> late{2, 3, 4};
  CHECK_THROWS_AS(decompress(c, late), std::invalid_argument);
  std::vector<int64_t> missing_change{1, 2, 4};
  CHECK_THROWS_AS(decompress(c, missing_change), std::invalid_argument);
  std::vector<int64_t> unsorted{1, 3, 2};
  CHECK_THROWS_AS(decompress(c, unsorted), std::invalid_argument);
  std::vector<int64_t> short_grid{1, 2};
  CHECK_THROWS_AS(decompress(c, short_grid), std::invalid_argument);
}

TEST_CASE("grid may extend past the last change point") {
  CompressedSeries c({{1, 7.0}, {3, 9.0}}, 6, 9);
  std::vector<int64_t> grid{1, 2, 3, 7, 9};
  auto values = decompress(c, grid);
  CHECK(values == std::vector<double>{7.0, 7.0, 9.0, 9.0, 9.0});
}

TEST_CASE("round trip is bit-exact and M matches the change count") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    size_t n = 1 + rng() % 40;
    std::vector<int64_t> ts(n);
    std::vector<double> values(n);
    int64_t t = 0;
    for (size_t i = 0; i < n; ++i) {
      t += 1 + rng() % 5;
      ts[i] = t;
      values[i] = double(rng() % 4) * 0.5;
    }
    auto q = make_quantized(ts, values);
    auto c = compress(q);
    auto back = decompress(c, q.timestamps());
    CHECK(back == values);

    size_t changes = 0;
    for (size_t i = 1; i < n; ++i) {
      if (values[i] != values[i - 1]) ++changes;
    }
    CHECK(c.size() == changes + 1);
    CHECK(compression_rate(c.original_length(), uint32_t(c.size())) ==
          doctest::Approx(100.0 - variability(values)).epsilon(1e-12));
  }
}

TEST_CASE("compress is idempotent on deduplicated input") {
  auto q = make_quantized({1, 4, 9}, {1.0, 2.0, 1.0});
  auto c1 = compress(q);
  QuantizedSeries as_series(
      {c1.points()[0].timestamp, c1.points()[1].timestamp, c1.points()[2].timestamp},
      {c1.points()[0].value, c1.points()[1].value, c1.points()[2].value},
      q.codebook(), {false, false, false});
  auto c2 = compress(as_series);
  CHECK(c1.points().size() == c2.points().size());
  for (size_t i = 0; i < c1.size(); ++i) {
    CHECK(c1.points()[i] == c2.points()[i]);
  }
}
