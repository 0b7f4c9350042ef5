#include "tsq/quantile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "tsq/kernels.hpp"
#include "tsq/metrics.hpp"

namespace tsq {

namespace {

// Suffix DP over the sorted distinct values of one series. layer(j)[i] is the
// minimal weighted l1 cost of covering values [i, V) with exactly j levels;
// layers are retained so any n can be reconstructed after the fact.
class CodebookFitter {
 public:
  explicit CodebookFitter(const TimeSeries& series) {
    std::vector<double> sorted(series.values().begin(), series.values().end());
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size(); ++i) {
      if (i == 0 || sorted[i] != sorted[i - 1]) {
        values_.push_back(sorted[i]);
        weights_.push_back(1.0);
      } else {
        weights_.back() += 1.0;
      }
    }
    const size_t v = values_.size();
    prefix_w_.assign(v + 1, 0.0);
    prefix_ws_.assign(v + 1, 0.0);
    for (size_t i = 0; i < v; ++i) {
      prefix_w_[i + 1] = prefix_w_[i] + weights_[i];
      prefix_ws_[i + 1] = prefix_ws_[i] + weights_[i] * values_[i];
    }
    layers_.push_back(std::vector<double>(v + 1,
                      std::numeric_limits<double>::infinity()));
    layers_[0][v] = 0.0;
    total_weight_ = prefix_w_[v];
  }

  size_t distinct_count() const { return values_.size(); }

  // Ensures layers 1..n exist.
  void grow(size_t n) {
    const size_t v = values_.size();
    while (layers_.size() <= n) {
      size_t j = layers_.size();
      std::vector<double> layer(v + 1, std::numeric_limits<double>::infinity());
      kernels::dp_layer(prefix_w_, prefix_ws_, values_, layers_[j - 1], j,
                        std::span<double>(layer.data(), layer.size()));
      layers_.push_back(std::move(layer));
    }
  }

  double optimal_cost(size_t n) const { return layers_[n][0]; }

  // Lexicographically smallest level sequence among cost-optimal partitions.
  // Left-to-right: every first-cell end whose total matches the layer value
  // exactly is a candidate; the (median, remaining sequence) pair that
  // compares smallest wins. Costs come from one prefix-sum formula, so ties
  // are exact float equality.
  // Subproblems do not depend on the requested n, so the memo is shared
  // across calls on one fitter.
  std::vector<double> reconstruct(size_t n) { return reconstruct_suffix(0, n); }

 private:
  std::vector<double> reconstruct_suffix(size_t i, size_t j) {
    auto key = std::make_pair(i, j);
    auto found = memo_.find(key);
    if (found != memo_.end()) return found->second;

    const size_t v = values_.size();
    std::vector<double> best;
    if (j == 0) {
      memo_[key] = best;
      return best;
    }
    const double target = layers_[j][i];
    for (size_t e = i; e <= v - j; ++e) {
      double cost = kernels::dp_cell_cost(prefix_w_, prefix_ws_, values_, i, e);
      if (cost + layers_[j - 1][e + 1] != target) continue;
      double level = values_[kernels::dp_cell_median(prefix_w_, i, e)];
      if (!best.empty() && level > best.front()) continue;
      std::vector<double> candidate;
      candidate.push_back(level);
      auto rest = reconstruct_suffix(e + 1, j - 1);
      candidate.insert(candidate.end(), rest.begin(), rest.end());
      if (best.empty() || candidate < best) best = std::move(candidate);
    }
    memo_[key] = best;
    return best;
  }

  std::vector<double> values_;
  std::vector<double> weights_;
  std::vector<double> prefix_w_;
  std::vector<double> prefix_ws_;
  std::vector<std::vector<double>> layers_;
  std::map<std::pair<size_t, size_t>, std::vector<double>> memo_;
  double total_weight_ = 0.0;
};

uint32_t deduplicated_length(std::span<const double> values) {
  uint32_t m = 1;
  for (size_t i = 1; i < values.size(); ++i) {
    if (values[i] != values[i - 1]) ++m;
  }
  return m;
}

}  // namespace

Codebook fit_codebook(const TimeSeries& series, size_t n) {
  CodebookFitter fitter(series);
  if (n < 1 || n > fitter.distinct_count()) {
    throw std::invalid_argument(
        "fit_codebook: n must be in [1, number of distinct values]");
  }
  fitter.grow(n);
  return Codebook(fitter.reconstruct(n));
}

QuantizedSeries quantize(const TimeSeries& series, const Codebook& codebook) {
  std::vector<double> mapped(series.size());
  kernels::map_nearest_levels(series.values(), codebook.levels(),
                              std::span<double>(mapped.data(), mapped.size()));
  std::vector<int64_t> ts(series.timestamps().begin(), series.timestamps().end());
  return QuantizedSeries(std::move(ts), std::move(mapped), codebook,
                         std::vector<bool>(series.size(), false));
}

std::vector<LevelSweepEntry> sweep_codebooks(const TimeSeries& series) {
  CodebookFitter fitter(series);
  const size_t v = fitter.distinct_count();
  fitter.grow(v);
  std::vector<LevelSweepEntry> entries;
  entries.reserve(v);
  std::vector<double> mapped(series.size());
  for (size_t n = 1; n <= v; ++n) {
    LevelSweepEntry entry;
    entry.n = n;
    entry.levels = fitter.reconstruct(n);
    kernels::map_nearest_levels(series.values(), entry.levels,
                                std::span<double>(mapped.data(), mapped.size()));
    entry.l1 = l1_loss(series.values(), mapped);
    entry.compressed_length = deduplicated_length(mapped);
    entry.cr_percent = compression_rate(static_cast<uint32_t>(series.size()),
                                        entry.compressed_length);
    entries.push_back(std::move(entry));
  }
  return entries;
}

OptimizationResult optimize_max_cr(const TimeSeries& series, double delta) {
  if (!(delta >= 0.0)) {
    throw std::invalid_argument("optimize_max_cr: delta must be >= 0");
  }
  auto entries = sweep_codebooks(series);
  const LevelSweepEntry* best = nullptr;
  for (const auto& entry : entries) {
    if (entry.l1 > delta) continue;
    if (best == nullptr || entry.cr_percent > best->cr_percent) best = &entry;
  }
  if (best != nullptr) {
    return {Codebook(best->levels), best->n, best->l1, best->cr_percent, true};
  }
  const LevelSweepEntry* fallback = &entries.front();
  for (const auto& entry : entries) {
    if (entry.l1 < fallback->l1 ||
        (entry.l1 == fallback->l1 && entry.cr_percent > fallback->cr_percent)) {
      fallback = &entry;
    }
  }
  return {Codebook(fallback->levels), fallback->n, fallback->l1,
          fallback->cr_percent, false};
}

OptimizationResult optimize_min_loss(const TimeSeries& series, double r_percent) {
  if (!(r_percent >= 0.0 && r_percent <= 100.0)) {
    throw std::invalid_argument("optimize_min_loss: rate must be in [0, 100]");
  }
  auto entries = sweep_codebooks(series);
  const LevelSweepEntry* best = nullptr;
  for (const auto& entry : entries) {
    if (entry.cr_percent < r_percent) continue;
    if (best == nullptr || entry.l1 < best->l1 ||
        (entry.l1 == best->l1 && entry.cr_percent > best->cr_percent)) {
      best = &entry;
    }
  }
  if (best != nullptr) {
    return {Codebook(best->levels), best->n, best->l1, best->cr_percent, true};
  }
  const LevelSweepEntry* fallback = &entries.front();
  for (const auto& entry : entries) {
    if (entry.cr_percent > fallback->cr_percent) fallback = &entry;
  }
  return {Codebook(fallback->levels), fallback->n, fallback->l1,
          fallback->cr_percent, false};
}

}  // namespace tsq
