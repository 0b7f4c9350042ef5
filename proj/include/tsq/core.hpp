#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace tsq {

/// Uniformly or non-uniformly sampled series of finite real values at
/// strictly increasing epoch-millisecond timestamps. Immutable once built.
class TimeSeries {
 public:
  TimeSeries(std::vector<int64_t> timestamps, std::vector<double> values);

  std::span<const int64_t> timestamps() const { return timestamps_; }
  std::span<const double> values() const { return values_; }
  size_t size() const { return values_.size(); }

 private:
  std::vector<int64_t> timestamps_;
  std::vector<double> values_;
};

/// Strictly increasing set of quantization levels.
class Codebook {
 public:
  explicit Codebook(std::vector<double> levels);

  std::span<const double> levels() const { return levels_; }
  size_t size() const { return levels_.size(); }

  bool operator==(const Codebook& other) const { return levels_ == other.levels_; }

 private:
  std::vector<double> levels_;
};

/// Series after level replacement. Values with exact_mask() false are members
/// of the codebook; values with exact_mask() true were preserved verbatim.
class QuantizedSeries {
 public:
  QuantizedSeries(std::vector<int64_t> timestamps, std::vector<double> values,
                  Codebook codebook, std::vector<bool> exact_mask);

  std::span<const int64_t> timestamps() const { return timestamps_; }
  std::span<const double> values() const { return values_; }
  const Codebook& codebook() const { return codebook_; }
  const std::vector<bool>& exact_mask() const { return exact_mask_; }
  size_t size() const { return values_.size(); }

 private:
  std::vector<int64_t> timestamps_;
  std::vector<double> values_;
  Codebook codebook_;
  std::vector<bool> exact_mask_;
};

struct ChangePoint {
  int64_t timestamp = 0;
  double value = 0.0;

  bool operator==(const ChangePoint&) const = default;
};

/// Run-collapsed series: one point per maximal run of equal values, plus the
/// original length and final timestamp needed for reconstruction.
class CompressedSeries {
 public:
  CompressedSeries(std::vector<ChangePoint> points, uint32_t original_length,
                   int64_t original_last_timestamp);

  std::span<const ChangePoint> points() const { return points_; }
  uint32_t original_length() const { return original_length_; }
  int64_t original_last_timestamp() const { return original_last_timestamp_; }
  size_t size() const { return points_.size(); }

  bool operator==(const CompressedSeries& other) const = default;

 private:
  std::vector<ChangePoint> points_;
  uint32_t original_length_;
  int64_t original_last_timestamp_;
};

/// Level closest to value in absolute distance; ties resolve to the lower
/// level. Throws std::invalid_argument on an empty codebook.
double nearest_level(double value, const Codebook& codebook);

/// Same search over a raw strictly increasing, non-empty level array.
double nearest_level_sorted(std::span<const double> levels, double value);

}  // namespace tsq
