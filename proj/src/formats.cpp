#include "tsq/formats.hpp"

#include <zlib.h>

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <initializer_list>
#include <set>

#include <json.hpp>

namespace tsq {

namespace {

using nlohmann::json;

constexpr char kMagic[4] = {'T', 'S', 'Q', 'C'};
constexpr uint8_t kVersion = 1;

uint32_t crc32_of(const uint8_t* data, size_t size) {
  uLong crc = crc32(0L, Z_NULL, 0);
  return static_cast<uint32_t>(crc32_z(crc, data, size));
}

[[noreturn]] void fail(DecodeErrorCode code, const std::string& message) {
  throw DecodeError(code, message);
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string("encode: non-finite ") + what);
  }
}

// ---------------------------------------------------------------------------
// Binary writer

class Writer {
 public:
  void u8(uint8_t v) { bytes_.push_back(v); }
  void u32(uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back(uint8_t(v >> (8 * i)));
  }
  void i64(int64_t v) {
    uint64_t u = std::bit_cast<uint64_t>(v);
    for (int i = 0; i < 8; ++i) bytes_.push_back(uint8_t(u >> (8 * i)));
  }
  void f64(double v) {
    uint64_t u = std::bit_cast<uint64_t>(v);
    for (int i = 0; i < 8; ++i) bytes_.push_back(uint8_t(u >> (8 * i)));
  }
  std::vector<uint8_t> finish() {
    uint32_t crc = crc32_of(bytes_.data(), bytes_.size());
    u32(crc);
    return std::move(bytes_);
  }

 private:
  std::vector<uint8_t> bytes_;
};

// Bounds-checked cursor over the payload region; overruns report truncation.
class Reader {
 public:
  Reader(const uint8_t* data, size_t size) : data_(data), size_(size) {}

  uint8_t u8() {
    need(1);
    return data_[pos_++];
  }
  uint32_t u32() {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= uint32_t(data_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  int64_t i64() {
    uint64_t u = raw64();
    return std::bit_cast<int64_t>(u);
  }
  double f64() {
    uint64_t u = raw64();
    return std::bit_cast<double>(u);
  }
  size_t remaining() const { return size_ - pos_; }

 private:
  uint64_t raw64() {
    need(8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(data_[pos_ + i]) << (8 * i);
    pos_ += 8;
    return v;
  }
  void need(size_t n) {
    if (size_ - pos_ < n) fail(DecodeErrorCode::truncated, "artifact truncated");
  }

  const uint8_t* data_;
  size_t size_;
  size_t pos_ = 0;
};

void write_points(Writer& w, const CompressedSeries& series) {
  w.u32(static_cast<uint32_t>(series.size()));
  for (const auto& p : series.points()) w.i64(p.timestamp);
  for (const auto& p : series.points()) {
    check_finite(p.value, "change-point value");
    w.f64(p.value);
  }
  w.u32(series.original_length());
  w.i64(series.original_last_timestamp());
}

// A count implying more payload bytes than remain is a short buffer; catching
// it here keeps corrupt length fields from driving huge allocations.
void check_count(const Reader& r, uint64_t count, uint64_t bytes_each) {
  if (count > r.remaining() / bytes_each) {
    fail(DecodeErrorCode::truncated, "artifact truncated");
  }
}

double checked_f64(Reader& r, const char* what) {
  double v = r.f64();
  if (!std::isfinite(v)) {
    fail(DecodeErrorCode::parse, std::string("non-finite ") + what);
  }
  return v;
}

CompressedSeries read_points(Reader& r) {
  uint32_t m = r.u32();
  if (m == 0) fail(DecodeErrorCode::parse, "empty change-point list");
  check_count(r, m, 16);  // timestamp + value per point
  std::vector<int64_t> ts(m);
  for (auto& t : ts) t = r.i64();
  std::vector<ChangePoint> points(m);
  for (uint32_t i = 0; i < m; ++i) points[i].timestamp = ts[i];
  for (auto& p : points) p.value = checked_f64(r, "change-point value");
  uint32_t original_length = r.u32();
  int64_t last = r.i64();
  try {
    return CompressedSeries(std::move(points), original_length, last);
  } catch (const std::invalid_argument& e) {
    fail(DecodeErrorCode::parse, e.what());
  }
}

void write_payload(Writer& w, const QuantilePayload& p) {
  w.u32(static_cast<uint32_t>(p.codebook.size()));
  for (double level : p.codebook) {
    check_finite(level, "codebook level");
    w.f64(level);
  }
  write_points(w, p.points);
}

QuantilePayload read_quantile(Reader& r) {
  uint32_t n = r.u32();
  if (n == 0) fail(DecodeErrorCode::parse, "empty codebook");
  check_count(r, n, 8);
  QuantilePayload p;
  p.codebook.resize(n);
  for (auto& level : p.codebook) level = checked_f64(r, "codebook level");
  for (size_t i = 1; i < p.codebook.size(); ++i) {
    if (p.codebook[i - 1] >= p.codebook[i]) {
      fail(DecodeErrorCode::parse, "codebook not strictly increasing");
    }
  }
  p.points = read_points(r);
  return p;
}

void write_payload(Writer& w, const BandedPayload& p) {
  w.u8(static_cast<uint8_t>(p.statistic));
  w.u8(static_cast<uint8_t>(p.band.kind));
  w.u32(p.n_slices);
  if (p.band.kind == BandKind::constant) {
    check_finite(p.band.lower, "band lower");
    check_finite(p.band.upper, "band upper");
    w.f64(p.band.lower);
    w.f64(p.band.upper);
  } else {
    w.u32(p.band.window);
    w.f64(p.band.lower_q);
    w.f64(p.band.upper_q);
    w.f64(p.band.epsilon);
  }
  w.u32(static_cast<uint32_t>(p.slice_levels.size()));
  for (const auto& level : p.slice_levels) {
    w.u32(level.slice);
    check_finite(level.value, "slice level");
    w.f64(level.value);
  }
  w.u32(p.exact_count);
  write_points(w, p.points);
}

BandedPayload read_banded(Reader& r) {
  BandedPayload p;
  uint8_t statistic = r.u8();
  if (statistic > 1) fail(DecodeErrorCode::parse, "unknown slice statistic");
  p.statistic = static_cast<SliceStatistic>(statistic);
  uint8_t band_kind = r.u8();
  if (band_kind > 1) fail(DecodeErrorCode::parse, "unknown band kind");
  p.band.kind = static_cast<BandKind>(band_kind);
  p.n_slices = r.u32();
  if (p.n_slices == 0) fail(DecodeErrorCode::parse, "zero slices");
  if (p.band.kind == BandKind::constant) {
    p.band.lower = checked_f64(r, "band lower");
    p.band.upper = checked_f64(r, "band upper");
  } else {
    p.band.window = r.u32();
    p.band.lower_q = checked_f64(r, "band lower quantile");
    p.band.upper_q = checked_f64(r, "band upper quantile");
    p.band.epsilon = checked_f64(r, "band epsilon");
  }
  uint32_t levels = r.u32();
  check_count(r, levels, 12);  // slice index + value per level
  p.slice_levels.resize(levels);
  for (auto& level : p.slice_levels) {
    level.slice = r.u32();
    if (level.slice >= p.n_slices) {
      fail(DecodeErrorCode::parse, "slice index out of range");
    }
    level.value = checked_f64(r, "slice level");
  }
  p.exact_count = r.u32();
  p.points = read_points(r);
  return p;
}

void write_payload(Writer& w, const CoveragePayload& p) {
  w.u32(p.dim);
  w.u32(static_cast<uint32_t>(p.centroids.size() / p.dim));
  for (double c : p.centroids) {
    check_finite(c, "centroid coordinate");
    w.f64(c);
  }
  check_finite(p.delta, "delta");
  w.f64(p.delta);
  w.u32(static_cast<uint32_t>(p.codes.size()));
  for (uint32_t code : p.codes) w.u32(code);
  w.u32(static_cast<uint32_t>(p.outliers.size()));
  for (const auto& o : p.outliers) {
    w.u32(o.index);
    for (double c : o.coords) {
      check_finite(c, "outlier coordinate");
      w.f64(c);
    }
  }
}

CoveragePayload read_coverage(Reader& r) {
  CoveragePayload p;
  p.dim = r.u32();
  if (p.dim == 0) fail(DecodeErrorCode::parse, "zero dimension");
  uint32_t k = r.u32();
  if (k == 0) fail(DecodeErrorCode::parse, "zero centroids");
  check_count(r, k, uint64_t(8) * p.dim);
  p.centroids.resize(size_t(k) * p.dim);
  for (auto& c : p.centroids) c = checked_f64(r, "centroid coordinate");
  p.delta = checked_f64(r, "delta");
  if (p.delta < 0) fail(DecodeErrorCode::parse, "negative delta");
  uint32_t n = r.u32();
  if (n == 0) fail(DecodeErrorCode::parse, "empty code list");
  check_count(r, n, 4);
  p.codes.resize(n);
  for (auto& code : p.codes) {
    code = r.u32();
    if (code != UINT32_MAX && code >= k) {
      fail(DecodeErrorCode::parse, "centroid code out of range");
    }
  }
  uint32_t outliers = r.u32();
  check_count(r, outliers, 4 + uint64_t(8) * p.dim);
  p.outliers.resize(outliers);
  uint32_t previous = 0;
  bool first = true;
  for (auto& o : p.outliers) {
    o.index = r.u32();
    if (o.index >= n || (!first && o.index <= previous)) {
      fail(DecodeErrorCode::parse, "bad outlier index");
    }
    if (p.codes[o.index] != UINT32_MAX) {
      fail(DecodeErrorCode::parse, "outlier index not coded as outlier");
    }
    previous = o.index;
    first = false;
    o.coords.resize(p.dim);
    for (auto& c : o.coords) c = checked_f64(r, "outlier coordinate");
  }
  size_t outlier_codes = 0;
  for (uint32_t code : p.codes) {
    if (code == UINT32_MAX) ++outlier_codes;
  }
  if (outlier_codes != p.outliers.size()) {
    fail(DecodeErrorCode::parse, "outlier code without stored point");
  }
  return p;
}

}  // namespace

std::vector<uint8_t> encode_binary(const Artifact& artifact) {
  if (artifact.version != kVersion) {
    throw std::invalid_argument("encode_binary: unsupported version");
  }
  Writer w;
  for (char c : kMagic) w.u8(static_cast<uint8_t>(c));
  w.u8(artifact.version);
  w.u8(static_cast<uint8_t>(artifact.kind));
  switch (artifact.kind) {
    case ArtifactKind::quantile_a:
      write_payload(w, std::get<QuantilePayload>(artifact.payload));
      break;
    case ArtifactKind::banded_b:
      write_payload(w, std::get<BandedPayload>(artifact.payload));
      break;
    case ArtifactKind::coverage_c:
      write_payload(w, std::get<CoveragePayload>(artifact.payload));
      break;
    default:
      throw std::invalid_argument("encode_binary: unknown kind");
  }
  return w.finish();
}

Artifact decode_binary(std::span<const uint8_t> bytes) {
  if (bytes.size() < 10) fail(DecodeErrorCode::truncated, "artifact truncated");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
    fail(DecodeErrorCode::bad_magic, "bad magic");
  }
  uint8_t version = bytes[4];
  if (version != kVersion) {
    fail(DecodeErrorCode::unsupported_version, "unsupported version");
  }
  uint8_t kind = bytes[5];
  if (kind < 1 || kind > 3) fail(DecodeErrorCode::unknown_kind, "unknown kind");

  bool crc_ok = false;
  {
    uint32_t stored = 0;
    for (int i = 0; i < 4; ++i) {
      stored |= uint32_t(bytes[bytes.size() - 4 + i]) << (8 * i);
    }
    crc_ok = crc32_of(bytes.data(), bytes.size() - 4) == stored;
  }

  // Structural pass first so a short buffer reports truncation, not a
  // checksum mismatch; values are only trusted once the CRC has passed.
  Artifact artifact;
  artifact.version = version;
  artifact.kind = static_cast<ArtifactKind>(kind);
  Reader r(bytes.data() + 6, bytes.size() - 10);
  try {
    switch (artifact.kind) {
      case ArtifactKind::quantile_a:
        artifact.payload = read_quantile(r);
        break;
      case ArtifactKind::banded_b:
        artifact.payload = read_banded(r);
        break;
      case ArtifactKind::coverage_c:
        artifact.payload = read_coverage(r);
        break;
      default:
        fail(DecodeErrorCode::unknown_kind, "unknown kind");
    }
  } catch (const DecodeError& e) {
    if (e.code() == DecodeErrorCode::truncated) throw;
    if (!crc_ok) fail(DecodeErrorCode::bad_checksum, "checksum mismatch");
    throw;
  }
  if (r.remaining() != 0) {
    if (!crc_ok) fail(DecodeErrorCode::bad_checksum, "checksum mismatch");
    fail(DecodeErrorCode::parse, "trailing bytes after payload");
  }
  if (!crc_ok) fail(DecodeErrorCode::bad_checksum, "checksum mismatch");
  return artifact;
}

// ---------------------------------------------------------------------------
// Text form

namespace {

json points_to_json(const CompressedSeries& series) {
  json ts = json::array();
  json vals = json::array();
  for (const auto& p : series.points()) {
    check_finite(p.value, "change-point value");
    ts.push_back(p.timestamp);
    vals.push_back(p.value);
  }
  return json{{"timestamps", std::move(ts)},
              {"values", std::move(vals)},
              {"original_length", series.original_length()},
              {"original_last_timestamp", series.original_last_timestamp()}};
}

json payload_to_json(const QuantilePayload& p) {
  for (double level : p.codebook) check_finite(level, "codebook level");
  return json{{"codebook", p.codebook}, {"points", points_to_json(p.points)}};
}

json payload_to_json(const BandedPayload& p) {
  json band;
  if (p.band.kind == BandKind::constant) {
    check_finite(p.band.lower, "band lower");
    check_finite(p.band.upper, "band upper");
    band = json{{"kind", "constant"},
                {"lower", p.band.lower},
                {"upper", p.band.upper}};
  } else {
    band = json{{"kind", "rolling"},
                {"window", p.band.window},
                {"lower_q", p.band.lower_q},
                {"upper_q", p.band.upper_q},
                {"epsilon", p.band.epsilon}};
  }
  json levels = json::array();
  for (const auto& level : p.slice_levels) {
    check_finite(level.value, "slice level");
    levels.push_back(json{{"slice", level.slice}, {"value", level.value}});
  }
  return json{{"statistic", p.statistic == SliceStatistic::median ? "median" : "mean"},
              {"n_slices", p.n_slices},
              {"band", std::move(band)},
              {"slice_levels", std::move(levels)},
              {"exact_count", p.exact_count},
              {"points", points_to_json(p.points)}};
}

json payload_to_json(const CoveragePayload& p) {
  for (double c : p.centroids) check_finite(c, "centroid coordinate");
  check_finite(p.delta, "delta");
  json outliers = json::array();
  for (const auto& o : p.outliers) {
    for (double c : o.coords) check_finite(c, "outlier coordinate");
    outliers.push_back(json{{"index", o.index}, {"coords", o.coords}});
  }
  return json{{"dim", p.dim},
              {"centroids", p.centroids},
              {"delta", p.delta},
              {"codes", p.codes},
              {"outliers", std::move(outliers)}};
}

const char* kind_name(ArtifactKind kind) {
  switch (kind) {
    case ArtifactKind::quantile_a: return "quantile_a";
    case ArtifactKind::banded_b: return "banded_b";
    case ArtifactKind::coverage_c: return "coverage_c";
  }
  throw std::invalid_argument("encode_text: unknown kind");
}

std::string checksum_hex(const std::string& payload_dump) {
  uint32_t crc = crc32_of(reinterpret_cast<const uint8_t*>(payload_dump.data()),
                          payload_dump.size());
  char buf[9];
  std::snprintf(buf, sizeof(buf), "%08x", crc);
  return buf;
}

// Strict field access: exact presence and type, no extras.

[[noreturn]] void parse_fail(const std::string& message) {
  fail(DecodeErrorCode::parse, message);
}

const json& field(const json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end()) parse_fail(std::string("missing key: ") + key);
  return *it;
}

void expect_keys(const json& object, std::initializer_list<const char*> keys) {
  if (!object.is_object()) parse_fail("expected an object");
  if (object.size() != keys.size()) parse_fail("unexpected keys in object");
  for (const char* key : keys) {
    if (!object.contains(key)) parse_fail(std::string("missing key: ") + key);
  }
}

double as_double(const json& j, const char* what) {
  if (!j.is_number()) parse_fail(std::string("expected a number: ") + what);
  double v = j.get<double>();
  if (!std::isfinite(v)) parse_fail(std::string("non-finite ") + what);
  return v;
}

uint32_t as_u32(const json& j, const char* what) {
  if (!j.is_number_unsigned() || j.get<uint64_t>() > UINT32_MAX) {
    parse_fail(std::string("expected a u32: ") + what);
  }
  return j.get<uint32_t>();
}

int64_t as_i64(const json& j, const char* what) {
  if (!j.is_number_integer()) {
    parse_fail(std::string("expected an integer: ") + what);
  }
  return j.get<int64_t>();
}

CompressedSeries points_from_json(const json& j) {
  expect_keys(j, {"timestamps", "values", "original_length",
                  "original_last_timestamp"});
  const json& ts = field(j, "timestamps");
  const json& vals = field(j, "values");
  if (!ts.is_array() || !vals.is_array() || ts.size() != vals.size() ||
      ts.empty()) {
    parse_fail("bad change-point arrays");
  }
  std::vector<ChangePoint> points(ts.size());
  for (size_t i = 0; i < ts.size(); ++i) {
    points[i].timestamp = as_i64(ts[i], "timestamp");
    points[i].value = as_double(vals[i], "change-point value");
  }
  uint32_t original_length = as_u32(field(j, "original_length"), "original_length");
  int64_t last = as_i64(field(j, "original_last_timestamp"),
                        "original_last_timestamp");
  try {
    return CompressedSeries(std::move(points), original_length, last);
  } catch (const std::invalid_argument& e) {
    parse_fail(e.what());
  }
}

QuantilePayload quantile_from_json(const json& j) {
  expect_keys(j, {"codebook", "points"});
  const json& levels = field(j, "codebook");
  if (!levels.is_array() || levels.empty()) {
    parse_fail("codebook must be a non-empty array");
  }
  QuantilePayload p;
  p.codebook.reserve(levels.size());
  for (const auto& level : levels) {
    p.codebook.push_back(as_double(level, "codebook level"));
  }
  for (size_t i = 1; i < p.codebook.size(); ++i) {
    if (p.codebook[i - 1] >= p.codebook[i]) {
      parse_fail("codebook not strictly increasing");
    }
  }
  p.points = points_from_json(field(j, "points"));
  return p;
}

BandedPayload banded_from_json(const json& j) {
  expect_keys(j, {"statistic", "n_slices", "band", "slice_levels",
                  "exact_count", "points"});
  BandedPayload p;
  const json& statistic = field(j, "statistic");
  if (statistic == "median") {
    p.statistic = SliceStatistic::median;
  } else if (statistic == "mean") {
    p.statistic = SliceStatistic::mean;
  } else {
    parse_fail("unknown slice statistic");
  }
  p.n_slices = as_u32(field(j, "n_slices"), "n_slices");
  if (p.n_slices == 0) parse_fail("zero slices");
  const json& band = field(j, "band");
  const json& band_kind = field(band, "kind");
  if (band_kind == "constant") {
    expect_keys(band, {"kind", "lower", "upper"});
    p.band.kind = BandKind::constant;
    p.band.lower = as_double(field(band, "lower"), "band lower");
    p.band.upper = as_double(field(band, "upper"), "band upper");
  } else if (band_kind == "rolling") {
    expect_keys(band, {"kind", "window", "lower_q", "upper_q", "epsilon"});
    p.band.kind = BandKind::rolling;
    p.band.window = as_u32(field(band, "window"), "window");
    p.band.lower_q = as_double(field(band, "lower_q"), "lower quantile");
    p.band.upper_q = as_double(field(band, "upper_q"), "upper quantile");
    p.band.epsilon = as_double(field(band, "epsilon"), "epsilon");
  } else {
    parse_fail("unknown band kind");
  }
  const json& levels = field(j, "slice_levels");
  if (!levels.is_array()) parse_fail("slice_levels must be an array");
  for (const auto& level : levels) {
    expect_keys(level, {"slice", "value"});
    SliceLevel entry;
    entry.slice = as_u32(field(level, "slice"), "slice index");
    if (entry.slice >= p.n_slices) parse_fail("slice index out of range");
    entry.value = as_double(field(level, "value"), "slice level");
    p.slice_levels.push_back(entry);
  }
  p.exact_count = as_u32(field(j, "exact_count"), "exact_count");
  p.points = points_from_json(field(j, "points"));
  return p;
}

CoveragePayload coverage_from_json(const json& j) {
  expect_keys(j, {"dim", "centroids", "delta", "codes", "outliers"});
  CoveragePayload p;
  p.dim = as_u32(field(j, "dim"), "dim");
  if (p.dim == 0) parse_fail("zero dimension");
  const json& centroids = field(j, "centroids");
  if (!centroids.is_array() || centroids.empty() ||
      centroids.size() % p.dim != 0) {
    parse_fail("bad centroid array");
  }
  for (const auto& c : centroids) {
    p.centroids.push_back(as_double(c, "centroid coordinate"));
  }
  const size_t k = p.centroids.size() / p.dim;
  p.delta = as_double(field(j, "delta"), "delta");
  if (p.delta < 0) parse_fail("negative delta");
  const json& codes = field(j, "codes");
  if (!codes.is_array() || codes.empty()) {
    parse_fail("codes must be a non-empty array");
  }
  for (const auto& code : codes) {
    uint32_t c = as_u32(code, "code");
    if (c != UINT32_MAX && c >= k) parse_fail("centroid code out of range");
    p.codes.push_back(c);
  }
  const json& outliers = field(j, "outliers");
  if (!outliers.is_array()) parse_fail("outliers must be an array");
  uint32_t previous = 0;
  bool first = true;
  for (const auto& o : outliers) {
    expect_keys(o, {"index", "coords"});
    OutlierPoint point;
    point.index = as_u32(field(o, "index"), "outlier index");
    if (point.index >= p.codes.size() ||
        (!first && point.index <= previous) ||
        p.codes[point.index] != UINT32_MAX) {
      parse_fail("bad outlier index");
    }
    previous = point.index;
    first = false;
    const json& coords = field(o, "coords");
    if (!coords.is_array() || coords.size() != p.dim) {
      parse_fail("bad outlier coords");
    }
    for (const auto& c : coords) {
      point.coords.push_back(as_double(c, "outlier coordinate"));
    }
    p.outliers.push_back(std::move(point));
  }
  size_t expected_outliers = 0;
  for (uint32_t c : p.codes) {
    if (c == UINT32_MAX) ++expected_outliers;
  }
  if (expected_outliers != p.outliers.size()) {
    parse_fail("outlier code without stored point");
  }
  return p;
}

}  // namespace

std::string encode_text(const Artifact& artifact) {
  if (artifact.version != kVersion) {
    throw std::invalid_argument("encode_text: unsupported version");
  }
  json payload;
  switch (artifact.kind) {
    case ArtifactKind::quantile_a:
      payload = payload_to_json(std::get<QuantilePayload>(artifact.payload));
      break;
    case ArtifactKind::banded_b:
      payload = payload_to_json(std::get<BandedPayload>(artifact.payload));
      break;
    case ArtifactKind::coverage_c:
      payload = payload_to_json(std::get<CoveragePayload>(artifact.payload));
      break;
  }
  std::string payload_dump = payload.dump();
  json doc{{"version", artifact.version},
           {"kind", kind_name(artifact.kind)},
           {"payload", std::move(payload)},
           {"checksum", checksum_hex(payload_dump)}};
  return doc.dump();
}

Artifact decode_text(const std::string& text) {
  // Duplicate keys inside one object are a parse error, tracked through the
  // SAX callback since the DOM parser would silently keep the last one.
  std::vector<std::set<std::string>> object_stack;
  json::parser_callback_t guard =
      [&object_stack](int, json::parse_event_t event, json& parsed) {
        if (event == json::parse_event_t::object_start) {
          object_stack.emplace_back();
        } else if (event == json::parse_event_t::object_end) {
          object_stack.pop_back();
        } else if (event == json::parse_event_t::key) {
          if (!object_stack.back().insert(parsed.get<std::string>()).second) {
            throw DecodeError(DecodeErrorCode::parse,
                              "duplicate key: " + parsed.get<std::string>());
          }
        }
        return true;
      };
  json doc;
  try {
    doc = json::parse(text, guard);
  } catch (const DecodeError&) {
    throw;
  } catch (const json::exception& e) {
    parse_fail(e.what());
  }

  expect_keys(doc, {"version", "kind", "payload", "checksum"});
  const json& version = field(doc, "version");
  if (!version.is_number_unsigned() || version.get<uint64_t>() != kVersion) {
    fail(DecodeErrorCode::unsupported_version, "unsupported version");
  }
  const json& kind = field(doc, "kind");
  ArtifactKind parsed_kind;
  if (kind == "quantile_a") {
    parsed_kind = ArtifactKind::quantile_a;
  } else if (kind == "banded_b") {
    parsed_kind = ArtifactKind::banded_b;
  } else if (kind == "coverage_c") {
    parsed_kind = ArtifactKind::coverage_c;
  } else {
    fail(DecodeErrorCode::unknown_kind, "unknown kind");
  }
  const json& payload = field(doc, "payload");
  const json& checksum = field(doc, "checksum");
  if (!checksum.is_string() || checksum.get<std::string>() != checksum_hex(payload.dump())) {
    fail(DecodeErrorCode::bad_checksum, "checksum mismatch");
  }

  Artifact artifact;
  artifact.version = kVersion;
  artifact.kind = parsed_kind;
  switch (parsed_kind) {
    case ArtifactKind::quantile_a:
      artifact.payload = quantile_from_json(payload);
      break;
    case ArtifactKind::banded_b:
      artifact.payload = banded_from_json(payload);
      break;
    case ArtifactKind::coverage_c:
      artifact.payload = coverage_from_json(payload);
      break;
  }
  return artifact;
}

std::string report_to_json(const DistortionReport& report) {
  json doc{{"l1", report.l1},
           {"relative_l1", report.relative_l1},
           {"mean_was_zero", report.mean_was_zero},
           {"cr_percent", report.cr_percent},
           {"varm_original", report.varm_original},
           {"varm_quantized", report.varm_quantized},
           {"original_length", report.original_length},
           {"compressed_length", report.compressed_length}};
  return doc.dump();
}

}  // namespace tsq
