#pragma once

#include <cstdint>
#include <span>

#include "tsq/core.hpp"

namespace tsq {

enum class CloudDistanceMode { max, mean };

/// Headline numbers reported by the CLI for one pipeline run.
struct DistortionReport {
  double l1 = 0.0;
  double relative_l1 = 0.0;
  bool mean_was_zero = false;  // relative_l1 left unnormalized when set
  double cr_percent = 0.0;
  double varm_original = 0.0;
  double varm_quantized = 0.0;
  uint32_t original_length = 0;
  uint32_t compressed_length = 0;
};

/// Mean absolute deviation between two equal-length value sequences.
double l1_loss(std::span<const double> original, std::span<const double> approx);

/// 100 * (original - compressed) / original. Requires 1 <= compressed <= original.
double compression_rate(uint32_t original_length, uint32_t compressed_length);

/// 100 * (count of nonzero consecutive differences + 1) / N. A series is
/// considered low-variability at or below 50.
double variability(std::span<const double> values);

bool is_low_variability(double varm_percent);

/// Euclidean distance between paired points of two equal-shape clouds,
/// aggregated by max or mean. Points are row-major, `dim` wide.
double cloud_distance(std::span<const double> a, std::span<const double> b,
                      size_t dim, CloudDistanceMode mode);

/// cloud_distance normalized by the max (mode max) or mean (mode mean) of the
/// original points' Euclidean norms. Throws std::invalid_argument when the
/// normalizer is zero.
double relative_cloud_error(std::span<const double> original,
                            std::span<const double> approx, size_t dim,
                            CloudDistanceMode mode);

/// Assembles the report for an original/quantized/compressed triple.
DistortionReport distortion_report(const TimeSeries& original,
                                   const QuantizedSeries& quantized,
                                   const CompressedSeries& compressed);

}  // namespace tsq
