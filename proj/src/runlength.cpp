#include "tsq/runlength.hpp"

#include <stdexcept>

namespace tsq {

CompressedSeries compress(const QuantizedSeries& quantized) {
  auto ts = quantized.timestamps();
  auto vals = quantized.values();
  std::vector<ChangePoint> points;
  points.push_back({ts[0], vals[0]});
  for (size_t i = 1; i < vals.size(); ++i) {
    if (vals[i] != vals[i - 1]) points.push_back({ts[i], vals[i]});
  }
  return CompressedSeries(std::move(points),
                          static_cast<uint32_t>(vals.size()), ts.back());
}

std::vector<double> decompress(const CompressedSeries& compressed,
                               std::span<const int64_t> grid) {
  if (grid.empty()) {
    throw std::invalid_argument("decompress: empty timestamp grid");
  }
  auto points = compressed.points();
  if (grid.front() != points.front().timestamp) {
    throw std::invalid_argument(
        "decompress: grid does not start at the first change point");
  }
  std::vector<double> out;
  out.reserve(grid.size());
  size_t next = 0;
  double current = points.front().value;
  for (size_t i = 0; i < grid.size(); ++i) {
    if (i > 0 && grid[i] <= grid[i - 1]) {
      throw std::invalid_argument("decompress: grid must be strictly increasing");
    }
    while (next < points.size() && points[next].timestamp <= grid[i]) {
      if (points[next].timestamp < grid[i]) {
        throw std::invalid_argument(
            "decompress: change-point timestamp missing from the grid");
      }
      current = points[next].value;
      ++next;
    }
    out.push_back(current);
  }
  if (next < points.size()) {
    throw std::invalid_argument(
        "decompress: change-point timestamp missing from the grid");
  }
  return out;
}

}  // namespace tsq
