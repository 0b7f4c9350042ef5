#include "tsq/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tsq/kernels.hpp"

namespace tsq {

namespace {

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

double distance(std::span<const double> a, std::span<const double> b) {
  double d2 = 0.0;
  for (size_t d = 0; d < a.size(); ++d) {
    double diff = a[d] - b[d];
    d2 += diff * diff;
  }
  return std::sqrt(d2);
}

}  // namespace

PointCloud::PointCloud(size_t dim, std::vector<double> data)
    : dim_(dim), data_(std::move(data)) {
  require(dim_ >= 1, "PointCloud: dimension must be >= 1");
  require(!data_.empty() && data_.size() % dim_ == 0,
          "PointCloud: data size must be a positive multiple of dim");
  for (double v : data_) {
    require(std::isfinite(v), "PointCloud: coordinates must be finite");
  }
}

Coverage kmeans(const PointCloud& cloud, size_t k, uint64_t seed,
                const KMeansOptions& options) {
  const size_t n = cloud.size();
  const size_t dim = cloud.dim();
  require(k >= 1 && k <= n, "kmeans: k must be in [1, N]");

  // Farthest-point initialization; the first pick comes from the seed, later
  // picks take the point farthest from the chosen set (ties to the lowest
  // index). Selection is over indices so duplicate coordinates stay legal.
  std::vector<double> centroids;
  centroids.reserve(k * dim);
  std::vector<bool> selected(n, false);
  std::vector<double> min_d(n, std::numeric_limits<double>::infinity());
  size_t first = static_cast<size_t>(seed % n);
  selected[first] = true;
  auto p0 = cloud.point(first);
  centroids.insert(centroids.end(), p0.begin(), p0.end());
  for (size_t i = 0; i < n; ++i) {
    min_d[i] = distance(cloud.point(i), p0);
  }
  for (size_t c = 1; c < k; ++c) {
    size_t next = n;
    double best = -1.0;
    for (size_t i = 0; i < n; ++i) {
      if (selected[i]) continue;
      if (min_d[i] > best) {
        best = min_d[i];
        next = i;
      }
    }
    selected[next] = true;
    auto pc = cloud.point(next);
    centroids.insert(centroids.end(), pc.begin(), pc.end());
    for (size_t i = 0; i < n; ++i) {
      double d = distance(cloud.point(i), pc);
      if (d < min_d[i]) min_d[i] = d;
    }
  }

  std::vector<uint32_t> assignment(n);
  kernels::assign_nearest(cloud.data(), n, centroids, k, dim,
                          std::span<uint32_t>(assignment.data(), n));

  std::vector<uint32_t> counts(k);
  std::vector<uint32_t> fresh(n);
  for (size_t iter = 0; iter < options.max_iterations; ++iter) {
    std::fill(counts.begin(), counts.end(), 0u);
    for (uint32_t a : assignment) ++counts[a];

    bool reseeded = false;
    std::vector<bool> used_reseed(n, false);
    for (size_t j = 0; j < k; ++j) {
      if (counts[j] != 0) continue;
      size_t farthest = n;
      double best = -1.0;
      for (size_t i = 0; i < n; ++i) {
        if (used_reseed[i]) continue;
        double d = distance(cloud.point(i),
                            {centroids.data() + assignment[i] * dim, dim});
        if (d > best) {
          best = d;
          farthest = i;
        }
      }
      used_reseed[farthest] = true;
      auto pf = cloud.point(farthest);
      std::copy(pf.begin(), pf.end(), centroids.begin() + j * dim);
      reseeded = true;
    }
    if (reseeded) {
      kernels::assign_nearest(cloud.data(), n, centroids, k, dim,
                              std::span<uint32_t>(assignment.data(), n));
      continue;
    }

    // Centroid update accumulates in point order to stay deterministic.
    std::fill(centroids.begin(), centroids.end(), 0.0);
    for (size_t i = 0; i < n; ++i) {
      auto p = cloud.point(i);
      double* c = centroids.data() + assignment[i] * dim;
      for (size_t d = 0; d < dim; ++d) c[d] += p[d];
    }
    for (size_t j = 0; j < k; ++j) {
      double* c = centroids.data() + j * dim;
      for (size_t d = 0; d < dim; ++d) c[d] /= static_cast<double>(counts[j]);
    }

    kernels::assign_nearest(cloud.data(), n, centroids, k, dim,
                            std::span<uint32_t>(fresh.data(), n));
    if (fresh == assignment) break;
    assignment.swap(fresh);
  }

  return Coverage{PointCloud(dim, std::move(centroids)), std::move(assignment),
                  0.0, {}};
}

namespace {

double max_assigned_distance(const PointCloud& cloud, const Coverage& coverage) {
  double worst = 0.0;
  for (size_t i = 0; i < cloud.size(); ++i) {
    uint32_t a = coverage.assignment[i];
    if (a == Coverage::kOutlierCode) continue;
    double d = distance(cloud.point(i), coverage.centroids.point(a));
    if (d > worst) worst = d;
  }
  return worst;
}

}  // namespace

Coverage delta_coverage(const PointCloud& cloud, double delta, uint64_t seed,
                        const KMeansOptions& options) {
  require(delta >= 0.0, "delta_coverage: delta must be >= 0");
  for (size_t k = 1; k <= cloud.size(); ++k) {
    Coverage coverage = kmeans(cloud, k, seed, options);
    if (max_assigned_distance(cloud, coverage) <= delta) {
      coverage.delta = delta;
      return coverage;
    }
  }
  // Unreachable: k == N puts every point on a centroid.
  throw std::logic_error("delta_coverage: no feasible K found");
}

PointCloud encode(const PointCloud& cloud, const Coverage& coverage) {
  require(coverage.assignment.size() == cloud.size(),
          "encode: coverage fitted on a different cloud");
  require(coverage.centroids.dim() == cloud.dim(),
          "encode: dimension mismatch");
  std::vector<double> data;
  data.reserve(cloud.size() * cloud.dim());
  for (size_t i = 0; i < cloud.size(); ++i) {
    uint32_t a = coverage.assignment[i];
    auto src = (a == Coverage::kOutlierCode) ? cloud.point(i)
                                             : coverage.centroids.point(a);
    data.insert(data.end(), src.begin(), src.end());
  }
  return PointCloud(cloud.dim(), std::move(data));
}

uint32_t streaming_encode(Coverage& coverage, std::span<const double> point) {
  const size_t dim = coverage.centroids.dim();
  require(point.size() == dim, "streaming_encode: dimension mismatch");
  uint32_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < coverage.k(); ++j) {
    double d = distance(point, coverage.centroids.point(j));
    if (d < best_d) {
      best_d = d;
      best = static_cast<uint32_t>(j);
    }
  }
  if (best_d <= coverage.delta) return best;
  std::vector<double> grown(coverage.centroids.data().begin(),
                            coverage.centroids.data().end());
  grown.insert(grown.end(), point.begin(), point.end());
  uint32_t code = static_cast<uint32_t>(coverage.k());
  coverage.centroids = PointCloud(dim, std::move(grown));
  return code;
}

std::vector<uint32_t> small_cluster_outliers(const Coverage& coverage,
                                             double min_fraction) {
  require(min_fraction > 0.0 && min_fraction < 1.0,
          "small_cluster_outliers: min_fraction must be in (0, 1)");
  const size_t n = coverage.assignment.size();
  std::vector<uint32_t> counts(coverage.k(), 0u);
  for (uint32_t a : coverage.assignment) {
    if (a != Coverage::kOutlierCode) ++counts[a];
  }
  double cutoff = min_fraction * static_cast<double>(n);
  std::vector<uint32_t> outliers;
  for (size_t i = 0; i < n; ++i) {
    uint32_t a = coverage.assignment[i];
    if (a != Coverage::kOutlierCode && static_cast<double>(counts[a]) < cutoff) {
      outliers.push_back(static_cast<uint32_t>(i));
    }
  }
  return outliers;
}

Coverage outlier_delta_coverage(const PointCloud& cloud, double delta,
                                double min_fraction, uint64_t seed,
                                size_t probe_k, const KMeansOptions& options) {
  require(delta >= 0.0, "outlier_delta_coverage: delta must be >= 0");
  Coverage preliminary = delta_coverage(cloud, delta, seed, options);
  Coverage probe = (probe_k == 0 || probe_k == preliminary.k())
                       ? preliminary
                       : kmeans(cloud, probe_k, seed, options);
  std::vector<uint32_t> outliers = small_cluster_outliers(probe, min_fraction);
  if (outliers.empty() || outliers.size() == cloud.size()) return preliminary;

  const size_t dim = cloud.dim();
  std::vector<double> kept;
  std::vector<size_t> kept_index;
  kept.reserve((cloud.size() - outliers.size()) * dim);
  size_t next_outlier = 0;
  for (size_t i = 0; i < cloud.size(); ++i) {
    if (next_outlier < outliers.size() && outliers[next_outlier] == i) {
      ++next_outlier;
      continue;
    }
    auto p = cloud.point(i);
    kept.insert(kept.end(), p.begin(), p.end());
    kept_index.push_back(i);
  }

  Coverage inner =
      delta_coverage(PointCloud(dim, std::move(kept)), delta, seed, options);
  std::vector<uint32_t> assignment(cloud.size(), Coverage::kOutlierCode);
  for (size_t pos = 0; pos < kept_index.size(); ++pos) {
    assignment[kept_index[pos]] = inner.assignment[pos];
  }
  return Coverage{std::move(inner.centroids), std::move(assignment), delta,
                  std::move(outliers)};
}

double normalcy_radius(const PointCloud& cluster_points,
                       std::span<const double> centroid, double factor) {
  require(cluster_points.dim() == centroid.size(),
          "normalcy_radius: dimension mismatch");
  require(factor >= 0.0, "normalcy_radius: factor must be >= 0");
  double worst = 0.0;
  for (size_t i = 0; i < cluster_points.size(); ++i) {
    double d = distance(cluster_points.point(i), centroid);
    if (d > worst) worst = d;
  }
  return factor * worst;
}

Coverage apply_normalcy(const PointCloud& cloud, const Coverage& coverage,
                        double factor) {
  require(coverage.assignment.size() == cloud.size(),
          "apply_normalcy: coverage fitted on a different cloud");
  require(factor >= 0.0, "apply_normalcy: factor must be >= 0");
  const size_t k = coverage.k();

  // R_j = factor * max member distance; memberless clusters get radius 0.
  std::vector<double> radius(k, 0.0);
  for (size_t i = 0; i < cloud.size(); ++i) {
    uint32_t a = coverage.assignment[i];
    if (a == Coverage::kOutlierCode) continue;
    double d = distance(cloud.point(i), coverage.centroids.point(a));
    if (d > radius[a]) radius[a] = d;
  }
  for (double& r : radius) r *= factor;

  std::vector<uint32_t> assignment(cloud.size(), Coverage::kOutlierCode);
  std::vector<uint32_t> outliers;
  for (size_t i = 0; i < cloud.size(); ++i) {
    uint32_t a = coverage.assignment[i];
    if (a == Coverage::kOutlierCode) {
      outliers.push_back(static_cast<uint32_t>(i));
      continue;
    }
    double own = distance(cloud.point(i), coverage.centroids.point(a));
    if (own <= radius[a]) {
      assignment[i] = a;
      continue;
    }
    // Outside its own circle: nearest centroid whose circle still contains
    // the point, exact storage when no circle does.
    uint32_t best = Coverage::kOutlierCode;
    double best_d = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < k; ++j) {
      double d = distance(cloud.point(i), coverage.centroids.point(j));
      if (d <= radius[j] && d < best_d) {
        best_d = d;
        best = static_cast<uint32_t>(j);
      }
    }
    assignment[i] = best;
    if (best == Coverage::kOutlierCode) {
      outliers.push_back(static_cast<uint32_t>(i));
    }
  }
  return Coverage{coverage.centroids, std::move(assignment), coverage.delta,
                  std::move(outliers)};
}

Coverage encode_combined(const PointCloud& cloud, size_t k, double min_fraction,
                         double factor, uint64_t seed,
                         const KMeansOptions& options) {
  Coverage base = kmeans(cloud, k, seed, options);
  std::vector<uint32_t> small = small_cluster_outliers(base, min_fraction);
  if (!small.empty() && small.size() < cloud.size()) {
    // Re-index the surviving clusters, dropping the eliminated ones.
    std::vector<uint32_t> counts(base.k(), 0u);
    for (uint32_t a : base.assignment) ++counts[a];
    double cutoff = min_fraction * static_cast<double>(cloud.size());
    std::vector<uint32_t> remap(base.k(), Coverage::kOutlierCode);
    std::vector<double> centroids;
    uint32_t next = 0;
    for (size_t j = 0; j < base.k(); ++j) {
      if (static_cast<double>(counts[j]) < cutoff) continue;
      remap[j] = next++;
      auto c = base.centroids.point(j);
      centroids.insert(centroids.end(), c.begin(), c.end());
    }
    if (next > 0) {
      std::vector<uint32_t> assignment(cloud.size());
      std::vector<uint32_t> outliers;
      for (size_t i = 0; i < cloud.size(); ++i) {
        assignment[i] = remap[base.assignment[i]];
        if (assignment[i] == Coverage::kOutlierCode) {
          outliers.push_back(static_cast<uint32_t>(i));
        }
      }
      base = Coverage{PointCloud(cloud.dim(), std::move(centroids)),
                      std::move(assignment), 0.0, std::move(outliers)};
    }
  }
  return apply_normalcy(cloud, base, factor);
}

}  // namespace tsq
