#include "tsq/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace tsq {

namespace {

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

}  // namespace

double l1_loss(std::span<const double> original, std::span<const double> approx) {
  require(!original.empty(), "l1_loss: empty input");
  require(original.size() == approx.size(), "l1_loss: length mismatch");
  double sum = 0.0;
  for (size_t i = 0; i < original.size(); ++i) {
    sum += std::abs(original[i] - approx[i]);
  }
  return sum / static_cast<double>(original.size());
}

double compression_rate(uint32_t original_length, uint32_t compressed_length) {
  require(compressed_length >= 1, "compression_rate: compressed length < 1");
  require(compressed_length <= original_length,
          "compression_rate: compressed longer than original");
  return 100.0 * static_cast<double>(original_length - compressed_length) /
         static_cast<double>(original_length);
}

double variability(std::span<const double> values) {
  require(!values.empty(), "variability: empty input");
  size_t changes = 0;
  for (size_t i = 1; i < values.size(); ++i) {
    if (values[i] != values[i - 1]) ++changes;
  }
  return 100.0 * static_cast<double>(changes + 1) /
         static_cast<double>(values.size());
}

bool is_low_variability(double varm_percent) { return varm_percent <= 50.0; }

namespace {

double point_distance(const double* a, const double* b, size_t dim) {
  double d2 = 0.0;
  for (size_t d = 0; d < dim; ++d) {
    double diff = a[d] - b[d];
    d2 += diff * diff;
  }
  return std::sqrt(d2);
}

double point_norm(const double* a, size_t dim) {
  double d2 = 0.0;
  for (size_t d = 0; d < dim; ++d) d2 += a[d] * a[d];
  return std::sqrt(d2);
}

}  // namespace

double cloud_distance(std::span<const double> a, std::span<const double> b,
                      size_t dim, CloudDistanceMode mode) {
  require(dim >= 1, "cloud_distance: dimension must be >= 1");
  require(a.size() == b.size(), "cloud_distance: shape mismatch");
  require(!a.empty() && a.size() % dim == 0, "cloud_distance: bad shape");
  const size_t n = a.size() / dim;
  if (mode == CloudDistanceMode::max) {
    double worst = 0.0;
    for (size_t i = 0; i < n; ++i) {
      double d = point_distance(a.data() + i * dim, b.data() + i * dim, dim);
      if (d > worst) worst = d;
    }
    return worst;
  }
  double sum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sum += point_distance(a.data() + i * dim, b.data() + i * dim, dim);
  }
  return sum / static_cast<double>(n);
}

double relative_cloud_error(std::span<const double> original,
                            std::span<const double> approx, size_t dim,
                            CloudDistanceMode mode) {
  double distance = cloud_distance(original, approx, dim, mode);
  const size_t n = original.size() / dim;
  double scale = 0.0;
  if (mode == CloudDistanceMode::max) {
    for (size_t i = 0; i < n; ++i) {
      double norm = point_norm(original.data() + i * dim, dim);
      if (norm > scale) scale = norm;
    }
  } else {
    for (size_t i = 0; i < n; ++i) {
      scale += point_norm(original.data() + i * dim, dim);
    }
    scale /= static_cast<double>(n);
  }
  require(scale != 0.0, "relative_cloud_error: original cloud has zero norm");
  return distance / scale;
}

DistortionReport distortion_report(const TimeSeries& original,
                                   const QuantizedSeries& quantized,
                                   const CompressedSeries& compressed) {
  require(original.size() == quantized.size(),
          "distortion_report: series length mismatch");
  DistortionReport report;
  report.l1 = l1_loss(original.values(), quantized.values());
  double mean = 0.0;
  for (double v : original.values()) mean += v;
  mean /= static_cast<double>(original.size());
  if (mean == 0.0) {
    report.relative_l1 = report.l1;
    report.mean_was_zero = true;
  } else {
    report.relative_l1 = report.l1 / std::abs(mean);
  }
  report.original_length = static_cast<uint32_t>(original.size());
  report.compressed_length = static_cast<uint32_t>(compressed.size());
  report.cr_percent =
      compression_rate(report.original_length, report.compressed_length);
  report.varm_original = variability(original.values());
  report.varm_quantized = variability(quantized.values());
  return report;
}

}  // namespace tsq
