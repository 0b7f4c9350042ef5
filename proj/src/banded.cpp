#include "tsq/banded.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tsq {

namespace {

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

double slice_boundary(double lower, double upper, size_t n, size_t k) {
  return lower + (upper - lower) * static_cast<double>(k) /
                     static_cast<double>(n);
}

// Largest j in [0, n-1] with c_j <= x; callers guarantee x >= c_0.
size_t slice_index(double lower, double upper, size_t n, double x) {
  size_t lo = 0, hi = n - 1;
  while (lo < hi) {
    size_t mid = lo + (hi - lo + 1) / 2;
    if (slice_boundary(lower, upper, n, mid) <= x) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

double midpoint_median(std::vector<double>& scratch) {
  std::sort(scratch.begin(), scratch.end());
  size_t m = scratch.size();
  if (m % 2 == 1) return scratch[m / 2];
  return (scratch[m / 2 - 1] + scratch[m / 2]) / 2.0;
}

}  // namespace

ThresholdBand::ThresholdBand(std::vector<double> lower, std::vector<double> upper,
                             bool constant)
    : constant_(constant), lower_(std::move(lower)), upper_(std::move(upper)) {}

ThresholdBand ThresholdBand::constant(double lower, double upper) {
  require(std::isfinite(lower) && std::isfinite(upper),
          "ThresholdBand: thresholds must be finite");
  require(lower < upper, "ThresholdBand: lower must be below upper");
  return ThresholdBand({lower}, {upper}, true);
}

ThresholdBand ThresholdBand::per_timestamp(std::vector<double> lower,
                                           std::vector<double> upper) {
  require(!lower.empty(), "ThresholdBand: empty thresholds");
  require(lower.size() == upper.size(), "ThresholdBand: length mismatch");
  for (size_t i = 0; i < lower.size(); ++i) {
    require(std::isfinite(lower[i]) && std::isfinite(upper[i]),
            "ThresholdBand: thresholds must be finite");
    require(lower[i] < upper[i], "ThresholdBand: lower must be below upper");
  }
  return ThresholdBand(std::move(lower), std::move(upper), false);
}

std::vector<double> slice_boundaries(double lower, double upper, size_t n) {
  require(std::isfinite(lower) && std::isfinite(upper),
          "slice_boundaries: bounds must be finite");
  require(lower < upper, "slice_boundaries: lower must be below upper");
  require(n >= 1, "slice_boundaries: need at least one slice");
  std::vector<double> bounds(n + 1);
  for (size_t k = 0; k <= n; ++k) bounds[k] = slice_boundary(lower, upper, n, k);
  return bounds;
}

BandedQuantization quantize_banded(const TimeSeries& series,
                                   const ThresholdBand& band, size_t n_slices,
                                   SliceStatistic statistic) {
  require(n_slices >= 1, "quantize_banded: need at least one slice");
  require(band.is_constant() || band.size() == series.size(),
          "quantize_banded: per-timestamp band length mismatch");

  auto values = series.values();
  const size_t n = series.size();
  constexpr uint32_t kExact = std::numeric_limits<uint32_t>::max();
  std::vector<uint32_t> slice_of(n, kExact);
  std::vector<std::vector<double>> slice_values(n_slices);
  for (size_t i = 0; i < n; ++i) {
    double low = band.lower_at(i);
    double high = band.upper_at(i);
    double x = values[i];
    if (x < low || x > high) continue;
    size_t j = slice_index(low, high, n_slices, x);
    slice_of[i] = static_cast<uint32_t>(j);
    slice_values[j].push_back(x);
  }

  std::map<uint32_t, double> stats;
  for (uint32_t j = 0; j < n_slices; ++j) {
    if (slice_values[j].empty()) continue;
    if (statistic == SliceStatistic::median) {
      stats[j] = midpoint_median(slice_values[j]);
    } else {
      double sum = 0.0;
      for (double v : slice_values[j]) sum += v;
      stats[j] = sum / static_cast<double>(slice_values[j].size());
    }
  }

  std::vector<double> out(n);
  std::vector<bool> exact(n, false);
  std::vector<double> levels;
  for (const auto& [j, m] : stats) levels.push_back(m);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  if (levels.empty()) {
    // Everything was out of band; any placeholder level satisfies the type.
    levels.push_back(band.lower_at(0));
  }
  for (size_t i = 0; i < n; ++i) {
    if (slice_of[i] == kExact) {
      out[i] = values[i];
      exact[i] = true;
    } else {
      out[i] = stats.at(slice_of[i]);
    }
  }

  std::vector<int64_t> ts(series.timestamps().begin(), series.timestamps().end());
  BandedQuantization result{
      QuantizedSeries(std::move(ts), std::move(out), Codebook(std::move(levels)),
                      std::move(exact)),
      std::move(stats), static_cast<uint32_t>(n_slices), statistic};
  return result;
}

ThresholdBand rolling_band(const TimeSeries& series, size_t window,
                           double lower_q, double upper_q, double epsilon) {
  require(window >= 2, "rolling_band: window must be >= 2");
  require(lower_q >= 0.0 && lower_q < upper_q && upper_q <= 1.0,
          "rolling_band: need 0 <= lower_q < upper_q <= 1");
  require(epsilon > 0.0, "rolling_band: epsilon must be positive");

  auto values = series.values();
  const size_t n = series.size();
  std::vector<double> lower(n), upper(n);
  std::vector<double> scratch;
  for (size_t k = 0; k < n; ++k) {
    size_t begin = (k + 1 >= window) ? k + 1 - window : 0;
    scratch.assign(values.begin() + begin, values.begin() + k + 1);
    std::sort(scratch.begin(), scratch.end());
    auto quantile = [&](double q) {
      double pos = q * static_cast<double>(scratch.size() - 1);
      size_t lo = static_cast<size_t>(pos);
      if (lo + 1 >= scratch.size()) return scratch.back();
      double frac = pos - static_cast<double>(lo);
      return scratch[lo] + frac * (scratch[lo + 1] - scratch[lo]);
    };
    lower[k] = quantile(lower_q);
    upper[k] = quantile(upper_q);
    if (!(upper[k] > lower[k])) upper[k] = lower[k] + epsilon;
  }
  return ThresholdBand::per_timestamp(std::move(lower), std::move(upper));
}

}  // namespace tsq
