#include <doctest.h>
#include <zlib.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fixtures.hpp"
#include "tsq/formats.hpp"

using namespace tsq;

namespace {

std::vector<uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_file_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

DecodeErrorCode code_of(const std::vector<uint8_t>& bytes) {
  try {
    decode_binary(bytes);
  } catch (const DecodeError& e) {
    return e.code();
  }
  FAIL("decode_binary accepted bad input");
  return DecodeErrorCode::parse;
}

DecodeErrorCode code_of(const std::string& text) {
  try {
    decode_text(text);
  } catch (const DecodeError& e) {
    return e.code();
  }
  FAIL("decode_text accepted bad input");
  return DecodeErrorCode::parse;
}

std::string wrap_doc(const char* kind, const nlohmann::json& payload) {
  std::string dump = payload.dump();
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32_z(crc, reinterpret_cast<const Bytef*>(dump.data()), dump.size());
  char buf[9];
  std::snprintf(buf, sizeof(buf), "%08x", static_cast<uint32_t>(crc));
  nlohmann::json doc{
      {"version", 1}, {"kind", kind}, {"payload", payload}, {"checksum", buf}};
  return doc.dump();
}

nlohmann::json quantile_payload_json() {
  return nlohmann::json{
      {"codebook", {1.0, 2.0}},
      {"points",
       {{"timestamps", {0, 1}},
        {"values", {1.0, 2.0}},
        {"original_length", 4},
        {"original_last_timestamp", 3}}}};
}

}  // namespace

TEST_CASE("binary round trip for every artifact kind") {
  for (const Artifact& a :
       {fixtures::quantile_artifact(), fixtures::banded_artifact(),
        fixtures::banded_constant_artifact(), fixtures::coverage_artifact()}) {
    auto bytes = encode_binary(a);
    CHECK(decode_binary(bytes) == a);
    CHECK(encode_binary(a) == bytes);
  }
}

TEST_CASE("text round trip for every artifact kind") {
  for (const Artifact& a :
       {fixtures::quantile_artifact(), fixtures::banded_artifact(),
        fixtures::banded_constant_artifact(), fixtures::coverage_artifact()}) {
    auto text = encode_text(a);
    Artifact back = decode_text(text);
    CHECK(back == a);
    CHECK(encode_text(back) == text);
  }
}

TEST_CASE("binary layout starts with magic, version, kind") {
  auto bytes = encode_binary(fixtures::quantile_artifact());
  REQUIRE(bytes.size() >= 10);
  CHECK(bytes[0] == 'T');
  CHECK(bytes[1] == 'S');
  CHECK(bytes[2] == 'Q');
  CHECK(bytes[3] == 'C');
  CHECK(bytes[4] == 1);
  CHECK(bytes[5] == 1);
  auto banded = encode_binary(fixtures::banded_artifact());
  CHECK(banded[5] == 2);
  auto coverage = encode_binary(fixtures::coverage_artifact());
  CHECK(coverage[5] == 3);
}

TEST_CASE("golden binary files decode and match the encoder byte for byte") {
  const std::string dir = TSQ_TEST_DATA_DIR;
  struct Row {
    const char* file;
    Artifact artifact;
  };
  for (const auto& [file, artifact] :
       {Row{"golden_quantile.bin", fixtures::quantile_artifact()},
        Row{"golden_banded.bin", fixtures::banded_artifact()},
        Row{"golden_coverage.bin", fixtures::coverage_artifact()}}) {
    auto golden = read_file_bytes(dir + "/" + file);
    CHECK(decode_binary(golden) == artifact);
    CHECK(encode_binary(artifact) == golden);
  }
}

TEST_CASE("golden text files decode and match the encoder character for character") {
  const std::string dir = TSQ_TEST_DATA_DIR;
  struct Row {
    const char* file;
    Artifact artifact;
  };
  for (const auto& [file, artifact] :
       {Row{"golden_quantile.json", fixtures::quantile_artifact()},
        Row{"golden_banded.json", fixtures::banded_artifact()},
        Row{"golden_coverage.json", fixtures::coverage_artifact()}}) {
    auto golden = read_file_text(dir + "/" + file);
    CHECK(decode_text(golden) == artifact);
    CHECK(encode_text(artifact) == golden);
  }
}

TEST_CASE("every truncation of a binary artifact reports truncated") {
  for (const Artifact& a :
       {fixtures::quantile_artifact(), fixtures::banded_artifact(),
        fixtures::coverage_artifact()}) {
    auto bytes = encode_binary(a);
    for (size_t len = 0; len < bytes.size(); ++len) {
      std::vector<uint8_t> cut(bytes.begin(), bytes.begin() + len);
      CHECK(code_of(cut) == DecodeErrorCode::truncated);
    }
  }
}

TEST_CASE("inverting any single byte is detected with the right code") {
  auto bytes = encode_binary(fixtures::quantile_artifact());
  for (size_t i = 0; i < bytes.size(); ++i) {
    auto bad = bytes;
    bad[i] ^= 0xFF;
    DecodeErrorCode code = code_of(bad);
    if (i < 4) {
      CHECK(code == DecodeErrorCode::bad_magic);
    } else if (i == 4) {
      CHECK(code == DecodeErrorCode::unsupported_version);
    } else if (i == 5) {
      CHECK(code == DecodeErrorCode::unknown_kind);
    } else {
      // An inflated count can run the reader off the end before the
      // checksum verdict, so truncated is acceptable alongside bad_checksum.
      CHECK((code == DecodeErrorCode::bad_checksum ||
             code == DecodeErrorCode::truncated));
    }
  }
}

TEST_CASE("random single-bit flips never decode cleanly") {
  auto bytes = encode_binary(fixtures::banded_artifact());
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    auto bad = bytes;
    size_t pos = rng() % bad.size();
    bad[pos] ^= uint8_t(1u << (rng() % 8));
    CHECK_THROWS_AS(decode_binary(bad), DecodeError);
  }
}

TEST_CASE("trailing garbage after the payload is rejected") {
  auto bytes = encode_binary(fixtures::quantile_artifact());
  bytes.push_back(0);
  // The extra byte shifts the CRC window, so the checksum fails first.
  CHECK(code_of(bytes) == DecodeErrorCode::bad_checksum);
}

TEST_CASE("binary header errors take priority over the checksum") {
  auto bytes = encode_binary(fixtures::coverage_artifact());
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  CHECK(code_of(bad_magic) == DecodeErrorCode::bad_magic);
  auto bad_version = bytes;
  bad_version[4] = 99;
  CHECK(code_of(bad_version) == DecodeErrorCode::unsupported_version);
  auto bad_kind = bytes;
  bad_kind[5] = 9;
  CHECK(code_of(bad_kind) == DecodeErrorCode::unknown_kind);
}

TEST_CASE("hand-built binary with a valid checksum but bad structure parses strictly") {
  // magic + version + kind, then a quantile payload with an empty codebook.
  std::vector<uint8_t> bytes{'T', 'S', 'Q', 'C', 1, 1, 0, 0, 0, 0};
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32_z(crc, bytes.data(), bytes.size());
  for (int i = 0; i < 4; ++i) bytes.push_back(uint8_t(crc >> (8 * i)));
  CHECK(code_of(bytes) == DecodeErrorCode::parse);
}

TEST_CASE("text decode rejects duplicate keys") {
  CHECK(code_of(std::string(
            R"({"version":1,"version":1,"kind":"quantile_a","payload":{},"checksum":"0"})")) ==
        DecodeErrorCode::parse);
  CHECK(code_of(std::string(
            R"({"version":1,"kind":"quantile_a","payload":{"codebook":[1.0],"codebook":[2.0]},"checksum":"0"})")) ==
        DecodeErrorCode::parse);
}

TEST_CASE("text decode rejects malformed JSON and wrong document shape") {
  CHECK(code_of(std::string("not json")) == DecodeErrorCode::parse);
  CHECK(code_of(std::string("[1,2,3]")) == DecodeErrorCode::parse);
  CHECK(code_of(std::string(R"({"version":1})")) == DecodeErrorCode::parse);
  CHECK(code_of(std::string(
            R"({"version":1,"kind":"quantile_a","payload":{},"checksum":"0","extra":0})")) ==
        DecodeErrorCode::parse);
}

TEST_CASE("text decode distinguishes version, kind, and checksum failures") {
  CHECK(code_of(std::string(
            R"({"version":2,"kind":"quantile_a","payload":{},"checksum":"0"})")) ==
        DecodeErrorCode::unsupported_version);
  CHECK(code_of(wrap_doc("mystery", quantile_payload_json())) ==
        DecodeErrorCode::unknown_kind);

  auto doc = nlohmann::json::parse(encode_text(fixtures::coverage_artifact()));
  doc["checksum"] = "00000000";
  CHECK(code_of(doc.dump()) == DecodeErrorCode::bad_checksum);

  auto tampered = nlohmann::json::parse(encode_text(fixtures::coverage_artifact()));
  tampered["payload"]["delta"] = 999.0;
  CHECK(code_of(tampered.dump()) == DecodeErrorCode::bad_checksum);
}

TEST_CASE("text payload validation is strict") {
  auto payload = quantile_payload_json();
  payload["codebook"] = nlohmann::json::array();
  CHECK(code_of(wrap_doc("quantile_a", payload)) == DecodeErrorCode::parse);

  payload = quantile_payload_json();
  payload["codebook"] = {2.0, 1.0};
  CHECK(code_of(wrap_doc("quantile_a", payload)) == DecodeErrorCode::parse);

  payload = quantile_payload_json();
  payload["codebook"] = {1.0, nullptr};
  CHECK(code_of(wrap_doc("quantile_a", payload)) == DecodeErrorCode::parse);

  payload = quantile_payload_json();
  payload["points"]["original_length"] = 1;  // fewer than the change points
  CHECK(code_of(wrap_doc("quantile_a", payload)) == DecodeErrorCode::parse);

  payload = quantile_payload_json();
  payload["surprise"] = true;
  CHECK(code_of(wrap_doc("quantile_a", payload)) == DecodeErrorCode::parse);

  nlohmann::json coverage{{"dim", 1},
                          {"centroids", {0.0}},
                          {"delta", 1.0},
                          {"codes", {0, 7}},
                          {"outliers", nlohmann::json::array()}};
  CHECK(code_of(wrap_doc("coverage_c", coverage)) == DecodeErrorCode::parse);

  coverage["codes"] = {0, 4294967295u};  // outlier code without a stored point
  CHECK(code_of(wrap_doc("coverage_c", coverage)) == DecodeErrorCode::parse);
}

TEST_CASE("non-finite values refuse to encode") {
  auto artifact = fixtures::quantile_artifact();
  std::get<QuantilePayload>(artifact.payload).codebook[1] =
      std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(encode_binary(artifact), std::invalid_argument);
  CHECK_THROWS_AS(encode_text(artifact), std::invalid_argument);

  auto coverage = fixtures::coverage_artifact();
  std::get<CoveragePayload>(coverage.payload).centroids[0] =
      std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(encode_binary(coverage), std::invalid_argument);
  CHECK_THROWS_AS(encode_text(coverage), std::invalid_argument);
}

TEST_CASE("distortion report serializes every field") {
  DistortionReport report;
  report.l1 = 0.25;
  report.relative_l1 = 0.05;
  report.mean_was_zero = false;
  report.cr_percent = 80.0;
  report.varm_original = 90.0;
  report.varm_quantized = 20.0;
  report.original_length = 100;
  report.compressed_length = 20;
  auto doc = nlohmann::json::parse(report_to_json(report));
  CHECK(doc["l1"] == 0.25);
  CHECK(doc["relative_l1"] == 0.05);
  CHECK(doc["mean_was_zero"] == false);
  CHECK(doc["cr_percent"] == 80.0);
  CHECK(doc["varm_original"] == 90.0);
  CHECK(doc["varm_quantized"] == 20.0);
  CHECK(doc["original_length"] == 100);
  CHECK(doc["compressed_length"] == 20);
  CHECK(doc.size() == 8);
}
