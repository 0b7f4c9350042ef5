#include "tsq/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tsq {

namespace {

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

}  // namespace

TimeSeries::TimeSeries(std::vector<int64_t> timestamps, std::vector<double> values)
    : timestamps_(std::move(timestamps)), values_(std::move(values)) {
  require(!values_.empty(), "TimeSeries: at least one sample required");
  require(timestamps_.size() == values_.size(),
          "TimeSeries: timestamp/value length mismatch");
  for (size_t i = 1; i < timestamps_.size(); ++i) {
    require(timestamps_[i - 1] < timestamps_[i],
            "TimeSeries: timestamps must be strictly increasing");
  }
  for (double v : values_) {
    require(std::isfinite(v), "TimeSeries: values must be finite");
  }
}

Codebook::Codebook(std::vector<double> levels) : levels_(std::move(levels)) {
  require(!levels_.empty(), "Codebook: at least one level required");
  for (double v : levels_) {
    require(std::isfinite(v), "Codebook: levels must be finite");
  }
  for (size_t i = 1; i < levels_.size(); ++i) {
    require(levels_[i - 1] < levels_[i],
            "Codebook: levels must be strictly increasing");
  }
}

QuantizedSeries::QuantizedSeries(std::vector<int64_t> timestamps,
                                 std::vector<double> values, Codebook codebook,
                                 std::vector<bool> exact_mask)
    : timestamps_(std::move(timestamps)),
      values_(std::move(values)),
      codebook_(std::move(codebook)),
      exact_mask_(std::move(exact_mask)) {
  require(!values_.empty(), "QuantizedSeries: at least one sample required");
  require(timestamps_.size() == values_.size(),
          "QuantizedSeries: timestamp/value length mismatch");
  require(exact_mask_.size() == values_.size(),
          "QuantizedSeries: exact_mask length mismatch");
  for (size_t i = 1; i < timestamps_.size(); ++i) {
    require(timestamps_[i - 1] < timestamps_[i],
            "QuantizedSeries: timestamps must be strictly increasing");
  }
  auto levels = codebook_.levels();
  for (size_t i = 0; i < values_.size(); ++i) {
    if (exact_mask_[i]) continue;
    require(std::binary_search(levels.begin(), levels.end(), values_[i]),
            "QuantizedSeries: non-exact value outside the codebook");
  }
}

CompressedSeries::CompressedSeries(std::vector<ChangePoint> points,
                                   uint32_t original_length,
                                   int64_t original_last_timestamp)
    : points_(std::move(points)),
      original_length_(original_length),
      original_last_timestamp_(original_last_timestamp) {
  require(!points_.empty(), "CompressedSeries: at least one point required");
  require(points_.size() <= original_length_,
          "CompressedSeries: more points than the original length");
  for (size_t i = 1; i < points_.size(); ++i) {
    require(points_[i - 1].timestamp < points_[i].timestamp,
            "CompressedSeries: timestamps must be strictly increasing");
    require(points_[i - 1].value != points_[i].value,
            "CompressedSeries: consecutive points must differ in value");
  }
  require(points_.back().timestamp <= original_last_timestamp_,
          "CompressedSeries: last change point after the original end");
}

double nearest_level_sorted(std::span<const double> levels, double value) {
  auto it = std::lower_bound(levels.begin(), levels.end(), value);
  if (it == levels.begin()) return *it;
  if (it == levels.end()) return *(it - 1);
  double lower = *(it - 1);
  double upper = *it;
  return (value - lower <= upper - value) ? lower : upper;
}

double nearest_level(double value, const Codebook& codebook) {
  return nearest_level_sorted(codebook.levels(), value);
}

}  // namespace tsq
