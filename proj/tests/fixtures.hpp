#pragma once

#include <limits>

#include "tsq/formats.hpp"

// Pinned artifacts shared by the round-trip tests and the golden files under
// tests/data/. Changing these invalidates the goldens on purpose.
namespace fixtures {

inline tsq::Artifact quantile_artifact() {
  tsq::QuantilePayload p;
  p.codebook = {-2.5, 0.5, 3.75};
  p.points = tsq::CompressedSeries(
      {{100, -2.5}, {130, 3.75}, {160, 0.5}}, 7, 190);
  return {1, tsq::ArtifactKind::quantile_a, std::move(p)};
}

inline tsq::Artifact banded_artifact() {
  tsq::BandedPayload p;
  p.statistic = tsq::SliceStatistic::mean;
  p.n_slices = 4;
  p.band.kind = tsq::BandKind::rolling;
  p.band.window = 5;
  p.band.lower_q = 0.1;
  p.band.upper_q = 0.9;
  p.band.epsilon = 1e-9;
  p.slice_levels = {{0, 1.25}, {2, 6.5}};
  p.exact_count = 2;
  p.points = tsq::CompressedSeries({{0, 1.25}, {2, 6.5}, {3, -10.0}}, 6, 5);
  return {1, tsq::ArtifactKind::banded_b, std::move(p)};
}

inline tsq::Artifact banded_constant_artifact() {
  tsq::BandedPayload p;
  p.statistic = tsq::SliceStatistic::median;
  p.n_slices = 2;
  p.band.kind = tsq::BandKind::constant;
  p.band.lower = 0.0;
  p.band.upper = 10.0;
  p.slice_levels = {{0, 2.5}, {1, 7.0}};
  p.exact_count = 1;
  p.points = tsq::CompressedSeries({{10, 2.5}, {20, 12.0}, {30, 7.0}}, 5, 50);
  return {1, tsq::ArtifactKind::banded_b, std::move(p)};
}

inline tsq::Artifact coverage_artifact() {
  tsq::CoveragePayload p;
  p.dim = 2;
  p.centroids = {0.0, 0.5, 10.0, 10.5};
  p.delta = 1.5;
  p.codes = {0, 0, 1, std::numeric_limits<uint32_t>::max(), 1};
  p.outliers = {{3, {42.0, -7.0}}};
  return {1, tsq::ArtifactKind::coverage_c, std::move(p)};
}

}  // namespace fixtures
