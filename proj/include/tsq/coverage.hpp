#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace tsq {

/// Fixed-dimension set of points, row-major. Immutable once built.
class PointCloud {
 public:
  PointCloud(size_t dim, std::vector<double> data);

  size_t dim() const { return dim_; }
  size_t size() const { return data_.size() / dim_; }
  std::span<const double> point(size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  std::span<const double> data() const { return data_; }

  bool operator==(const PointCloud&) const = default;

 private:
  size_t dim_;
  std::vector<double> data_;
};

/// Centroid set with one code per source point. Codes index centroids;
/// kOutlierCode marks points preserved exactly. delta is the radius the
/// coverage was built for (0 when produced by bare kmeans).
struct Coverage {
  static constexpr uint32_t kOutlierCode = std::numeric_limits<uint32_t>::max();

  PointCloud centroids{1, {0.0}};
  std::vector<uint32_t> assignment;
  double delta = 0.0;
  std::vector<uint32_t> outliers;  // sorted source indices

  size_t k() const { return centroids.size(); }
};

struct KMeansOptions {
  size_t max_iterations = 100;
};

/// Lloyd iterations from a deterministic farthest-point initialization (the
/// first centroid index is drawn from `seed`). Converges when assignments
/// stop changing or the iteration cap is hit; empty clusters are re-seeded
/// with the point farthest from its assigned centroid. Requires 1 <= k <= N.
Coverage kmeans(const PointCloud& cloud, size_t k, uint64_t seed,
                const KMeansOptions& options = {});

/// Smallest K (scanning K = 1, 2, ...) whose kmeans clustering puts every
/// point within delta of its centroid. Terminates by K = N. Requires delta >= 0.
Coverage delta_coverage(const PointCloud& cloud, double delta, uint64_t seed,
                        const KMeansOptions& options = {});

/// Cloud with every non-outlier point collapsed to its centroid; outliers
/// pass through exactly.
PointCloud encode(const PointCloud& cloud, const Coverage& coverage);

/// Online step: returns the code for `point`. Within delta of the nearest
/// centroid the coverage is unchanged; otherwise the point itself is appended
/// as a new centroid and its index returned.
uint32_t streaming_encode(Coverage& coverage, std::span<const double> point);

/// Indices of points whose cluster holds fewer than min_fraction of all
/// points. Requires 0 < min_fraction < 1.
std::vector<uint32_t> small_cluster_outliers(const Coverage& coverage,
                                             double min_fraction);

/// Small-cluster points (detected at probe_k, default the K found by a
/// preliminary delta_coverage) are marked outliers and stored exactly; the
/// remaining points get their own delta coverage.
Coverage outlier_delta_coverage(const PointCloud& cloud, double delta,
                                double min_fraction, uint64_t seed,
                                size_t probe_k = 0,
                                const KMeansOptions& options = {});

/// factor * max distance from the centroid to the cluster's members.
/// Throws std::invalid_argument on an empty cluster.
double normalcy_radius(const PointCloud& cluster_points,
                       std::span<const double> centroid, double factor = 3.0);

/// Re-codes a coverage through normalcy circles of radius factor * max
/// cluster distance: points within their own cluster's circle keep their
/// centroid; points outside every circle become outliers (stored exactly);
/// points outside their own circle but inside another's take the nearest
/// containing centroid.
Coverage apply_normalcy(const PointCloud& cloud, const Coverage& coverage,
                        double factor = 3.0);

/// Composed pipeline: kmeans at k, small clusters eliminated into exact
/// outliers first, then normalcy circles applied to the remaining clusters.
Coverage encode_combined(const PointCloud& cloud, size_t k,
                         double min_fraction, double factor, uint64_t seed,
                         const KMeansOptions& options = {});

}  // namespace tsq
