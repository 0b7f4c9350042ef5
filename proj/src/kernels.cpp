#include "tsq/kernels.hpp"

#include <cstddef>
#include <limits>

#include "tsq/core.hpp"

namespace tsq::kernels {

void map_nearest_levels_serial(std::span<const double> values,
                               std::span<const double> levels,
                               std::span<double> out) {
  for (size_t i = 0; i < values.size(); ++i) {
    out[i] = nearest_level_sorted(levels, values[i]);
  }
}

void map_nearest_levels(std::span<const double> values,
                        std::span<const double> levels, std::span<double> out) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = nearest_level_sorted(levels, values[i]);
  }
}

size_t dp_cell_median(std::span<const double> prefix_w, size_t a, size_t b) {
  // prefix_w[i] = total weight of sorted values [0, i); lower weighted median
  // of [a, b] is the smallest m with cum(a..m) >= half the cell weight.
  double total = prefix_w[b + 1] - prefix_w[a];
  double half = total / 2.0;
  size_t lo = a, hi = b;
  while (lo < hi) {
    size_t mid = lo + (hi - lo) / 2;
    if (prefix_w[mid + 1] - prefix_w[a] >= half) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

double dp_cell_cost(std::span<const double> prefix_w,
                    std::span<const double> prefix_ws,
                    std::span<const double> sorted_values, size_t a, size_t b) {
  size_t m = dp_cell_median(prefix_w, a, b);
  double med = sorted_values[m];
  double w_left = prefix_w[m + 1] - prefix_w[a];
  double ws_left = prefix_ws[m + 1] - prefix_ws[a];
  double w_right = prefix_w[b + 1] - prefix_w[m + 1];
  double ws_right = prefix_ws[b + 1] - prefix_ws[m + 1];
  return (med * w_left - ws_left) + (ws_right - med * w_right);
}

namespace {

inline double dp_entry(std::span<const double> prefix_w,
                       std::span<const double> prefix_ws,
                       std::span<const double> sorted_values,
                       std::span<const double> prev, size_t cells, size_t i) {
  // prev holds the (cells - 1)-cell suffix costs, length V + 1, prev[V] == 0
  // at the base layer. The first cell ends at e, leaving cells - 1 cells for
  // the suffix, so e ranges over [i, V - cells].
  const size_t v = sorted_values.size();
  double best = std::numeric_limits<double>::infinity();
  for (size_t e = i; e <= v - cells; ++e) {
    double c = dp_cell_cost(prefix_w, prefix_ws, sorted_values, i, e) + prev[e + 1];
    if (c < best) best = c;
  }
  return best;
}

}  // namespace

void dp_layer_serial(std::span<const double> prefix_w,
                     std::span<const double> prefix_ws,
                     std::span<const double> sorted_values,
                     std::span<const double> prev, size_t cells,
                     std::span<double> out) {
  const size_t v = sorted_values.size();
  for (size_t i = 0; i + cells <= v; ++i) {
    out[i] = dp_entry(prefix_w, prefix_ws, sorted_values, prev, cells, i);
  }
}

void dp_layer(std::span<const double> prefix_w, std::span<const double> prefix_ws,
              std::span<const double> sorted_values, std::span<const double> prev,
              size_t cells, std::span<double> out) {
  const size_t v = sorted_values.size();
  const std::ptrdiff_t starts = static_cast<std::ptrdiff_t>(v - cells + 1);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < starts; ++i) {
    out[i] = dp_entry(prefix_w, prefix_ws, sorted_values, prev, cells,
                      static_cast<size_t>(i));
  }
}

namespace {

inline uint32_t nearest_centroid(std::span<const double> points,
                                 std::span<const double> centroids, size_t k,
                                 size_t dim, size_t i) {
  const double* p = points.data() + i * dim;
  uint32_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < k; ++j) {
    const double* c = centroids.data() + j * dim;
    double d2 = 0.0;
    for (size_t d = 0; d < dim; ++d) {
      double diff = p[d] - c[d];
      d2 += diff * diff;
    }
    if (d2 < best_d2) {
      best_d2 = d2;
      best = static_cast<uint32_t>(j);
    }
  }
  return best;
}

}  // namespace

void assign_nearest_serial(std::span<const double> points, size_t n_points,
                           std::span<const double> centroids, size_t k,
                           size_t dim, std::span<uint32_t> out) {
  for (size_t i = 0; i < n_points; ++i) {
    out[i] = nearest_centroid(points, centroids, k, dim, i);
  }
}

void assign_nearest(std::span<const double> points, size_t n_points,
                    std::span<const double> centroids, size_t k, size_t dim,
                    std::span<uint32_t> out) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(n_points);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = nearest_centroid(points, centroids, k, dim, static_cast<size_t>(i));
  }
}

}  // namespace tsq::kernels
