#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "tsq/core.hpp"

namespace tsq {

enum class SliceStatistic : uint8_t { median = 0, mean = 1 };

/// Importance band. Values above the upper or below the lower threshold are
/// preserved exactly; the in-band range is sliced. Constant or per-timestamp.
class ThresholdBand {
 public:
  static ThresholdBand constant(double lower, double upper);
  static ThresholdBand per_timestamp(std::vector<double> lower,
                                     std::vector<double> upper);

  bool is_constant() const { return constant_; }
  size_t size() const { return lower_.size(); }
  double lower_at(size_t k) const { return lower_[constant_ ? 0 : k]; }
  double upper_at(size_t k) const { return upper_[constant_ ? 0 : k]; }

 private:
  ThresholdBand(std::vector<double> lower, std::vector<double> upper,
                bool constant);

  bool constant_;
  std::vector<double> lower_;
  std::vector<double> upper_;
};

/// Banded quantization output: the quantized series (out-of-band points have
/// exact_mask true) plus the slice representatives that were applied.
struct BandedQuantization {
  QuantizedSeries quantized;
  std::map<uint32_t, double> slice_stats;  // slice index -> representative
  uint32_t n_slices = 0;
  SliceStatistic statistic = SliceStatistic::median;
};

/// Equal-width slice boundaries c_k = lower + (upper - lower) * k / n for
/// k = 0..n. Requires lower < upper and n >= 1.
std::vector<double> slice_boundaries(double lower, double upper, size_t n);

/// Replaces each in-band value by the statistic of all raw values sharing its
/// slice index; out-of-band values pass through exactly (exact_mask true).
/// Slice index: largest j with c_j <= x, clamped to n-1, so x == upper joins
/// the last slice. A per-timestamp band must match the series length.
BandedQuantization quantize_banded(const TimeSeries& series,
                                   const ThresholdBand& band, size_t n_slices,
                                   SliceStatistic statistic = SliceStatistic::median);

/// Trailing-window empirical quantile band, window clamped to the available
/// prefix. Quantiles use linear interpolation between order statistics.
/// Degenerate windows (quantiles coincide) are widened upward by epsilon.
/// Requires window >= 2 and 0 <= lower_q < upper_q <= 1.
ThresholdBand rolling_band(const TimeSeries& series, size_t window,
                           double lower_q, double upper_q,
                           double epsilon = 1e-9);

}  // namespace tsq
