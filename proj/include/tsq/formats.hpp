#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tsq/banded.hpp"
#include "tsq/core.hpp"
#include "tsq/metrics.hpp"

namespace tsq {

enum class ArtifactKind : uint8_t { quantile_a = 1, banded_b = 2, coverage_c = 3 };

enum class BandKind : uint8_t { constant = 0, rolling = 1 };

enum class DecodeErrorCode {
  bad_magic,
  bad_checksum,
  truncated,
  unsupported_version,
  unknown_kind,
  parse,
};

class DecodeError : public std::runtime_error {
 public:
  DecodeError(DecodeErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  DecodeErrorCode code() const { return code_; }

 private:
  DecodeErrorCode code_;
};

struct QuantilePayload {
  std::vector<double> codebook;
  CompressedSeries points{{{0, 0.0}}, 1, 0};

  bool operator==(const QuantilePayload&) const = default;
};

struct BandDescriptor {
  BandKind kind = BandKind::constant;
  double lower = 0.0;   // constant band
  double upper = 0.0;
  uint32_t window = 0;  // rolling band
  double lower_q = 0.0;
  double upper_q = 0.0;
  double epsilon = 0.0;

  bool operator==(const BandDescriptor&) const = default;
};

struct SliceLevel {
  uint32_t slice = 0;
  double value = 0.0;

  bool operator==(const SliceLevel&) const = default;
};

struct BandedPayload {
  SliceStatistic statistic = SliceStatistic::median;
  uint32_t n_slices = 0;
  BandDescriptor band;
  std::vector<SliceLevel> slice_levels;
  uint32_t exact_count = 0;
  CompressedSeries points{{{0, 0.0}}, 1, 0};

  bool operator==(const BandedPayload&) const = default;
};

struct OutlierPoint {
  uint32_t index = 0;
  std::vector<double> coords;

  bool operator==(const OutlierPoint&) const = default;
};

struct CoveragePayload {
  uint32_t dim = 0;
  std::vector<double> centroids;  // k * dim, row-major
  double delta = 0.0;
  std::vector<uint32_t> codes;    // per source point; UINT32_MAX = outlier
  std::vector<OutlierPoint> outliers;

  bool operator==(const CoveragePayload&) const = default;
};

struct Artifact {
  uint8_t version = 1;
  ArtifactKind kind = ArtifactKind::quantile_a;
  std::variant<QuantilePayload, BandedPayload, CoveragePayload> payload;

  bool operator==(const Artifact&) const = default;
};

/// Canonical JSON document: sorted keys, shortest round-trip reals, CRC-32 of
/// the payload rendering stored alongside. Encoding equal artifacts yields
/// identical bytes. decode_text rejects duplicate keys, non-finite reals,
/// unknown versions and kinds, and checksum mismatches.
std::string encode_text(const Artifact& artifact);
Artifact decode_text(const std::string& text);

/// Binary wire format: magic "TSQC", version u8, kind u8, little-endian u32
/// counts, i64 timestamps, IEEE-754 binary64 values, trailing CRC-32 of all
/// preceding bytes. decode_binary verifies magic and CRC before any payload
/// parsing and reports bad magic, bad CRC, and truncation as distinct codes.
std::vector<uint8_t> encode_binary(const Artifact& artifact);
Artifact decode_binary(std::span<const uint8_t> bytes);

/// Stats JSON emitted by the CLI (single document, sorted keys).
std::string report_to_json(const DistortionReport& report);

}  // namespace tsq
