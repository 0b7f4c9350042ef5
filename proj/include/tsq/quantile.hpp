#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tsq/core.hpp"

namespace tsq {

struct OptimizationResult {
  Codebook codebook;
  size_t n = 0;
  double l1 = 0.0;
  double cr_percent = 0.0;
  bool feasible = true;
};

/// l1-optimal codebook of exactly n levels drawn from the distinct values of
/// the series. Exact dynamic program over the sorted distinct values; ties
/// between equally optimal codebooks resolve to the lexicographically
/// smallest level sequence. Requires 1 <= n <= number of distinct values.
Codebook fit_codebook(const TimeSeries& series, size_t n);

/// Replaces every value by its nearest codebook level (ties to the lower
/// level). exact_mask is all false.
QuantizedSeries quantize(const TimeSeries& series, const Codebook& codebook);

/// Scans n = 1..distinct-count and returns the fit maximizing the
/// deduplicated compression rate among those with l1 <= delta; CR ties
/// resolve to the smaller n. Requires delta >= 0. When no n satisfies the
/// bound (cannot happen for delta >= 0, kept for robustness) the result has
/// feasible == false and carries the smallest-l1 fit.
OptimizationResult optimize_max_cr(const TimeSeries& series, double delta);

/// Scans n = 1..distinct-count and returns the fit minimizing l1 among those
/// whose compression rate is >= r_percent; l1 ties resolve to the larger CR,
/// then the smaller n. Requires 0 <= r_percent <= 100. When no n reaches
/// r_percent the result has feasible == false and carries the max-CR fit.
OptimizationResult optimize_min_loss(const TimeSeries& series, double r_percent);

/// Shared scan machinery: per-n optimal fits over one series.
/// Exposed for the per-n sweep in tests and tooling.
struct LevelSweepEntry {
  size_t n = 0;
  std::vector<double> levels;
  double l1 = 0.0;
  double cr_percent = 0.0;
  uint32_t compressed_length = 0;
};

std::vector<LevelSweepEntry> sweep_codebooks(const TimeSeries& series);

}  // namespace tsq
