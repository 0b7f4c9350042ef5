#pragma once

#include <cstdint>
#include <span>

namespace tsq::kernels {

// Data-parallel inner loops. Each parallel kernel writes independent output
// elements only, so it is bit-identical to its serial reference at any thread
// count; the serial twins are kept for tests and the benchmark target.

/// out[i] = codebook level nearest to values[i] (ties to the lower level).
/// levels must be strictly increasing and non-empty.
void map_nearest_levels_serial(std::span<const double> values,
                               std::span<const double> levels,
                               std::span<double> out);
void map_nearest_levels(std::span<const double> values,
                        std::span<const double> levels, std::span<double> out);

/// One suffix layer of the codebook DP over V sorted distinct values:
///   out[i] = min over e in [i, V-j] of cell_cost(i, e) + prev[e + 1]
/// where prev is the (j-1)-cell layer and cell costs come from prefix sums
/// (weights w, weighted values ws, cumulative from index 0).
void dp_layer_serial(std::span<const double> prefix_w,
                     std::span<const double> prefix_ws,
                     std::span<const double> sorted_values,
                     std::span<const double> prev, size_t cells,
                     std::span<double> out);
void dp_layer(std::span<const double> prefix_w, std::span<const double> prefix_ws,
              std::span<const double> sorted_values, std::span<const double> prev,
              size_t cells, std::span<double> out);

/// out[i] = index of the centroid nearest to point i (squared Euclidean,
/// ties to the lowest index). Points and centroids are row-major, dim wide.
void assign_nearest_serial(std::span<const double> points, size_t n_points,
                           std::span<const double> centroids, size_t k,
                           size_t dim, std::span<uint32_t> out);
void assign_nearest(std::span<const double> points, size_t n_points,
                    std::span<const double> centroids, size_t k, size_t dim,
                    std::span<uint32_t> out);

// Shared single-element helpers used by both variants.

/// Index range helpers for the DP cell cost: cost of covering sorted distinct
/// values [a, b] by their weighted lower median, from prefix sums.
double dp_cell_cost(std::span<const double> prefix_w,
                    std::span<const double> prefix_ws,
                    std::span<const double> sorted_values, size_t a, size_t b);

/// Index of the weighted lower median of sorted distinct values [a, b].
size_t dp_cell_median(std::span<const double> prefix_w, size_t a, size_t b);

}  // namespace tsq::kernels
