#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "tsq/banded.hpp"
#include "tsq/coverage.hpp"
#include "tsq/csv.hpp"
#include "tsq/formats.hpp"
#include "tsq/metrics.hpp"
#include "tsq/quantile.hpp"
#include "tsq/runlength.hpp"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kRuntime = 3;
constexpr int kInfeasible = 4;

constexpr uint32_t kOutlier = std::numeric_limits<uint32_t>::max();
constexpr double kRollingEpsilon = 1e-9;

int usage_error(const std::string& message) {
  std::cerr << "tsq: " << message << "\n";
  return kUsage;
}

struct OutputSpec {
  std::string target;
  bool is_dir = false;
};

// A single input writes to --output directly unless it names a directory;
// multiple inputs always treat --output as a directory (created on demand).
OutputSpec resolve_output(const std::string& out, size_t n_inputs) {
  OutputSpec spec{out, false};
  if (n_inputs > 1 || std::filesystem::is_directory(out)) {
    spec.is_dir = true;
    std::filesystem::create_directories(out);
  }
  return spec;
}

std::string output_path(const OutputSpec& spec, const std::string& input,
                        const char* ext) {
  if (!spec.is_dir) return spec.target;
  auto name = std::filesystem::path(input).stem().string() + ext;
  return (std::filesystem::path(spec.target) / name).string();
}

struct FileOutcome {
  json stats;
  int code = kOk;
};

// Runs process() over every input (at most `jobs` threads), emits the
// aggregated stats JSON, and returns the worst per-file exit code.
template <typename Fn>
int run_all(const std::vector<std::string>& inputs, size_t jobs,
            const std::string& stats_path, Fn&& process) {
  std::vector<FileOutcome> outcomes(inputs.size());
  std::atomic<size_t> cursor{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (size_t i = cursor.fetch_add(1); i < inputs.size();
         i = cursor.fetch_add(1)) {
      try {
        outcomes[i] = process(inputs[i]);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(log_mutex);
        std::cerr << "tsq: " << inputs[i] << ": " << e.what() << "\n";
        outcomes[i] = {json{{"input", inputs[i]}, {"error", e.what()}},
                       kRuntime};
      }
    }
  };
  size_t n_threads = std::min(jobs, inputs.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  json stats;
  if (inputs.size() == 1) {
    stats = std::move(outcomes[0].stats);
  } else {
    stats = json::array();
    for (auto& o : outcomes) stats.push_back(std::move(o.stats));
  }
  std::string text = stats.dump(2);
  text.push_back('\n');
  if (stats_path.empty()) {
    std::cout << text;
  } else {
    tsq::atomic_write(stats_path, text);
  }
  int worst = kOk;
  for (const auto& o : outcomes) worst = std::max(worst, o.code);
  return worst;
}

void write_artifact(const tsq::Artifact& artifact, const std::string& path,
                    bool binary) {
  if (binary) {
    tsq::atomic_write(path, tsq::encode_binary(artifact));
  } else {
    tsq::atomic_write(path, tsq::encode_text(artifact));
  }
}

std::vector<uint8_t> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

tsq::Artifact read_artifact(const std::string& path) {
  auto bytes = read_bytes(path);
  if (bytes.size() >= 4 && bytes[0] == 'T' && bytes[1] == 'S' &&
      bytes[2] == 'Q' && bytes[3] == 'C') {
    return tsq::decode_binary(bytes);
  }
  return tsq::decode_text(std::string(bytes.begin(), bytes.end()));
}

json base_stats(const std::string& input, const std::string& output,
                const char* kind) {
  return json{{"input", input}, {"output", output}, {"kind", kind}};
}

void merge_report(json& stats, const tsq::DistortionReport& report) {
  stats.update(json::parse(tsq::report_to_json(report)));
}

// ---------------------------------------------------------------------------
// quantize-a

struct QuantizeOpts {
  std::vector<std::string> inputs;
  std::string output;
  std::string format = "binary";
  std::string stats_path;
  size_t jobs = 1;
  size_t n_levels = 0;
  double max_cr_delta = 0.0;
  double min_loss_cr = 0.0;
  bool has_n = false;
  bool has_delta = false;
  bool has_cr = false;
};

int run_quantize(const QuantizeOpts& o) {
  int set = int(o.has_n) + int(o.has_delta) + int(o.has_cr);
  if (set != 1) {
    return usage_error("quantize-a needs exactly one of --n, --max-cr-delta, "
                       "--min-loss-cr");
  }
  if (o.has_n && o.n_levels < 1) return usage_error("--n must be >= 1");
  if (o.has_delta && !(o.max_cr_delta >= 0.0)) {
    return usage_error("--max-cr-delta must be >= 0");
  }
  if (o.has_cr && !(o.min_loss_cr >= 0.0 && o.min_loss_cr <= 100.0)) {
    return usage_error("--min-loss-cr must be in [0, 100]");
  }

  const bool binary = o.format == "binary";
  auto out = resolve_output(o.output, o.inputs.size());
  return run_all(o.inputs, o.jobs, o.stats_path,
                 [&](const std::string& input) {
    auto series = tsq::table_to_series(tsq::read_csv(input));
    tsq::Codebook codebook(std::vector<double>{0.0});
    const char* mode;
    bool feasible = true;
    if (o.has_n) {
      mode = "n";
      codebook = tsq::fit_codebook(series, o.n_levels);
    } else if (o.has_delta) {
      mode = "max_cr";
      auto result = tsq::optimize_max_cr(series, o.max_cr_delta);
      codebook = result.codebook;
      feasible = result.feasible;
    } else {
      mode = "min_loss";
      auto result = tsq::optimize_min_loss(series, o.min_loss_cr);
      codebook = result.codebook;
      feasible = result.feasible;
    }

    auto quantized = tsq::quantize(series, codebook);
    auto compressed = tsq::compress(quantized);
    tsq::QuantilePayload payload{
        {codebook.levels().begin(), codebook.levels().end()}, compressed};
    tsq::Artifact artifact{1, tsq::ArtifactKind::quantile_a,
                           std::move(payload)};
    std::string path = output_path(out, input, binary ? ".tsq" : ".json");
    write_artifact(artifact, path, binary);

    // The report reflects what actually landed on disk.
    auto written = std::get<tsq::QuantilePayload>(read_artifact(path).payload);
    json stats = base_stats(input, path, "quantile_a");
    stats["mode"] = mode;
    stats["feasible"] = feasible;
    stats["n_levels"] = codebook.size();
    merge_report(stats, tsq::distortion_report(series, quantized,
                                               written.points));
    return FileOutcome{std::move(stats), feasible ? kOk : kInfeasible};
  });
}

// ---------------------------------------------------------------------------
// banded-b

struct BandedOpts {
  std::vector<std::string> inputs;
  std::string output;
  std::string format = "binary";
  std::string stats_path;
  size_t jobs = 1;
  double low = 0.0;
  double high = 0.0;
  bool has_low = false;
  bool has_high = false;
  std::vector<double> rolling;
  size_t slices = 0;
  std::string stat = "median";
};

int run_banded(const BandedOpts& o) {
  const bool constant = o.has_low || o.has_high;
  if (constant && (!o.has_low || !o.has_high)) {
    return usage_error("--low and --high must be given together");
  }
  if (constant == !o.rolling.empty()) {
    return usage_error("banded-b needs either --low/--high or --rolling");
  }
  if (constant && !(o.low < o.high)) {
    return usage_error("--low must be below --high");
  }
  size_t window = 0;
  if (!constant) {
    if (o.rolling.size() != 3) {
      return usage_error("--rolling takes window,lower_q,upper_q");
    }
    double w = o.rolling[0];
    if (!(w >= 2.0) || w != std::floor(w)) {
      return usage_error("--rolling window must be an integer >= 2");
    }
    if (!(o.rolling[1] >= 0.0 && o.rolling[1] < o.rolling[2] &&
          o.rolling[2] <= 1.0)) {
      return usage_error("--rolling quantiles need 0 <= lower < upper <= 1");
    }
    window = static_cast<size_t>(w);
  }
  if (o.slices < 1) return usage_error("--slices must be >= 1");

  const auto statistic = o.stat == "median" ? tsq::SliceStatistic::median
                                            : tsq::SliceStatistic::mean;
  const bool binary = o.format == "binary";
  auto out = resolve_output(o.output, o.inputs.size());
  return run_all(o.inputs, o.jobs, o.stats_path,
                 [&](const std::string& input) {
    auto series = tsq::table_to_series(tsq::read_csv(input));
    tsq::BandDescriptor descriptor;
    tsq::ThresholdBand band = [&] {
      if (constant) {
        descriptor.kind = tsq::BandKind::constant;
        descriptor.lower = o.low;
        descriptor.upper = o.high;
        return tsq::ThresholdBand::constant(o.low, o.high);
      }
      descriptor.kind = tsq::BandKind::rolling;
      descriptor.window = static_cast<uint32_t>(window);
      descriptor.lower_q = o.rolling[1];
      descriptor.upper_q = o.rolling[2];
      descriptor.epsilon = kRollingEpsilon;
      return tsq::rolling_band(series, window, o.rolling[1], o.rolling[2],
                               kRollingEpsilon);
    }();

    auto banded = tsq::quantize_banded(series, band, o.slices, statistic);
    auto compressed = tsq::compress(banded.quantized);
    uint32_t exact_count = 0;
    for (bool exact : banded.quantized.exact_mask()) {
      if (exact) ++exact_count;
    }
    std::vector<tsq::SliceLevel> levels;
    levels.reserve(banded.slice_stats.size());
    for (const auto& [slice, value] : banded.slice_stats) {
      levels.push_back({slice, value});
    }
    tsq::BandedPayload payload{banded.statistic, banded.n_slices, descriptor,
                               std::move(levels), exact_count, compressed};
    tsq::Artifact artifact{1, tsq::ArtifactKind::banded_b, std::move(payload)};
    std::string path = output_path(out, input, binary ? ".tsq" : ".json");
    write_artifact(artifact, path, binary);

    auto written = std::get<tsq::BandedPayload>(read_artifact(path).payload);
    json stats = base_stats(input, path, "banded_b");
    stats["band"] = constant ? "constant" : "rolling";
    stats["n_slices"] = o.slices;
    stats["statistic"] = o.stat;
    stats["exact_count"] = exact_count;
    merge_report(stats, tsq::distortion_report(series, banded.quantized,
                                               written.points));
    return FileOutcome{std::move(stats), kOk};
  });
}

// ---------------------------------------------------------------------------
// coverage-c

struct CoverageOpts {
  std::vector<std::string> inputs;
  std::string output;
  std::string format = "binary";
  std::string stats_path;
  size_t jobs = 1;
  double delta = 0.0;
  double outlier_fraction = 0.0;
  bool has_fraction = false;
  double normalcy_factor = 0.0;
  bool has_factor = false;
  uint64_t seed = 0;
  std::string sweep_csv;
};

// Approximated cloud as stored: centroid per coded point, exact outliers.
std::vector<double> payload_cloud(const tsq::CoveragePayload& p) {
  std::vector<double> data;
  data.reserve(p.codes.size() * p.dim);
  size_t next_outlier = 0;
  for (uint32_t code : p.codes) {
    if (code == kOutlier) {
      const auto& coords = p.outliers[next_outlier++].coords;
      data.insert(data.end(), coords.begin(), coords.end());
    } else {
      const double* c = p.centroids.data() + size_t(code) * p.dim;
      data.insert(data.end(), c, c + p.dim);
    }
  }
  return data;
}

void cloud_error_stats(json& stats, const tsq::PointCloud& cloud,
                       std::span<const double> approx) {
  stats["d_max"] = tsq::cloud_distance(cloud.data(), approx, cloud.dim(),
                                       tsq::CloudDistanceMode::max);
  stats["d_mean"] = tsq::cloud_distance(cloud.data(), approx, cloud.dim(),
                                        tsq::CloudDistanceMode::mean);
  try {
    stats["l_max"] = tsq::relative_cloud_error(cloud.data(), approx,
                                               cloud.dim(),
                                               tsq::CloudDistanceMode::max);
    stats["l_2"] = tsq::relative_cloud_error(cloud.data(), approx, cloud.dim(),
                                             tsq::CloudDistanceMode::mean);
  } catch (const std::invalid_argument&) {
    stats["l_max"] = nullptr;  // zero-norm cloud has no relative error
    stats["l_2"] = nullptr;
  }
}

int run_coverage(const CoverageOpts& o) {
  if (!(o.delta >= 0.0)) return usage_error("--delta must be >= 0");
  if (o.has_fraction &&
      !(o.outlier_fraction > 0.0 && o.outlier_fraction < 1.0)) {
    return usage_error("--outlier-fraction must be in (0, 1)");
  }
  if (o.has_factor && !(o.normalcy_factor >= 0.0)) {
    return usage_error("--normalcy-factor must be >= 0");
  }
  if (!o.sweep_csv.empty() && o.inputs.size() != 1) {
    return usage_error("--sweep-csv works with a single input");
  }

  const bool binary = o.format == "binary";
  auto out = resolve_output(o.output, o.inputs.size());
  return run_all(o.inputs, o.jobs, o.stats_path,
                 [&](const std::string& input) {
    auto cloud = tsq::table_to_cloud(tsq::read_csv(input));
    tsq::Coverage coverage =
        o.has_fraction
            ? tsq::outlier_delta_coverage(cloud, o.delta, o.outlier_fraction,
                                          o.seed)
            : tsq::delta_coverage(cloud, o.delta, o.seed);
    if (o.has_factor) {
      coverage = tsq::apply_normalcy(cloud, coverage, o.normalcy_factor);
    }

    tsq::CoveragePayload payload;
    payload.dim = static_cast<uint32_t>(cloud.dim());
    payload.centroids.assign(coverage.centroids.data().begin(),
                             coverage.centroids.data().end());
    payload.delta = coverage.delta;
    payload.codes = coverage.assignment;
    for (uint32_t idx : coverage.outliers) {
      auto p = cloud.point(idx);
      payload.outliers.push_back({idx, {p.begin(), p.end()}});
    }
    tsq::Artifact artifact{1, tsq::ArtifactKind::coverage_c,
                           std::move(payload)};
    std::string path = output_path(out, input, binary ? ".tsq" : ".json");
    write_artifact(artifact, path, binary);

    auto written = std::get<tsq::CoveragePayload>(read_artifact(path).payload);
    json stats = base_stats(input, path, "coverage_c");
    stats["k"] = written.centroids.size() / written.dim;
    stats["delta"] = written.delta;
    stats["n_points"] = written.codes.size();
    stats["n_outliers"] = written.outliers.size();
    cloud_error_stats(stats, cloud, payload_cloud(written));

    if (!o.sweep_csv.empty()) {
      std::string table = "k,d_max,d_mean,l_max,l_2\n";
      for (size_t k = 1; k <= coverage.k(); ++k) {
        auto sweep = tsq::kmeans(cloud, k, o.seed);
        auto approx = tsq::encode(cloud, sweep);
        double d_max = tsq::cloud_distance(cloud.data(), approx.data(),
                                           cloud.dim(),
                                           tsq::CloudDistanceMode::max);
        double d_mean = tsq::cloud_distance(cloud.data(), approx.data(),
                                            cloud.dim(),
                                            tsq::CloudDistanceMode::mean);
        table += std::to_string(k) + "," + tsq::format_double(d_max) + "," +
                 tsq::format_double(d_mean);
        try {
          double l_max = tsq::relative_cloud_error(
              cloud.data(), approx.data(), cloud.dim(),
              tsq::CloudDistanceMode::max);
          double l_2 = tsq::relative_cloud_error(cloud.data(), approx.data(),
                                                 cloud.dim(),
                                                 tsq::CloudDistanceMode::mean);
          table += "," + tsq::format_double(l_max) + "," +
                   tsq::format_double(l_2) + "\n";
        } catch (const std::invalid_argument&) {
          table += ",,\n";
        }
      }
      tsq::atomic_write(o.sweep_csv, table);
      stats["sweep_csv"] = o.sweep_csv;
    }
    return FileOutcome{std::move(stats), kOk};
  });
}

// ---------------------------------------------------------------------------
// reconstruct

struct ReconstructOpts {
  std::vector<std::string> inputs;
  std::string output;
  std::string stats_path;
  std::string grid;
  size_t jobs = 1;
};

std::vector<int64_t> read_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::vector<int64_t> grid;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (size_t comma = view.find(','); comma != std::string_view::npos) {
      view = view.substr(0, comma);
    }
    while (!view.empty() && (view.front() == ' ' || view.front() == '\t')) {
      view.remove_prefix(1);
    }
    while (!view.empty() && (view.back() == ' ' || view.back() == '\t' ||
                             view.back() == '\r')) {
      view.remove_suffix(1);
    }
    if (view.empty()) continue;
    int64_t ts = 0;
    auto [ptr, ec] = std::from_chars(view.data(), view.data() + view.size(), ts);
    if (ec != std::errc() || ptr != view.data() + view.size()) {
      if (grid.empty() && line_no == 1) continue;  // header
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": not a timestamp");
    }
    grid.push_back(ts);
  }
  if (grid.empty()) throw std::runtime_error(path + ": no timestamps");
  return grid;
}

std::vector<int64_t> uniform_grid(const tsq::CompressedSeries& series) {
  const int64_t first = series.points().front().timestamp;
  const int64_t last = series.original_last_timestamp();
  const uint32_t n = series.original_length();
  if (n == 1) return {first};
  if (last <= first || (last - first) % int64_t(n - 1) != 0) {
    throw std::runtime_error(
        "change points do not fit a uniform grid; pass --grid");
  }
  const int64_t step = (last - first) / int64_t(n - 1);
  std::vector<int64_t> grid(n);
  for (uint32_t i = 0; i < n; ++i) grid[i] = first + step * int64_t(i);
  return grid;
}

int run_reconstruct(const ReconstructOpts& o) {
  auto out = resolve_output(o.output, o.inputs.size());
  return run_all(o.inputs, o.jobs, o.stats_path,
                 [&](const std::string& input) {
    tsq::Artifact artifact = read_artifact(input);
    std::string text;
    const char* kind;
    size_t rows = 0;

    auto expand = [&](const tsq::CompressedSeries& series) {
      std::vector<int64_t> grid =
          o.grid.empty() ? uniform_grid(series) : read_grid(o.grid);
      std::vector<double> values = tsq::decompress(series, grid);
      for (size_t i = 0; i < grid.size(); ++i) {
        text += std::to_string(grid[i]) + "," +
                tsq::format_double(values[i]) + "\n";
      }
      rows = grid.size();
    };

    if (auto* q = std::get_if<tsq::QuantilePayload>(&artifact.payload)) {
      kind = "quantile_a";
      expand(q->points);
    } else if (auto* b = std::get_if<tsq::BandedPayload>(&artifact.payload)) {
      kind = "banded_b";
      expand(b->points);
    } else {
      kind = "coverage_c";
      const auto& c = std::get<tsq::CoveragePayload>(artifact.payload);
      auto data = payload_cloud(c);
      rows = c.codes.size();
      for (size_t i = 0; i < rows; ++i) {
        text += std::to_string(i);
        for (size_t d = 0; d < c.dim; ++d) {
          text += "," + tsq::format_double(data[i * c.dim + d]);
        }
        text += "\n";
      }
    }

    std::string path = output_path(out, input, ".csv");
    tsq::atomic_write(path, text);
    json stats = base_stats(input, path, kind);
    stats["rows"] = rows;
    return FileOutcome{std::move(stats), kOk};
  });
}

// ---------------------------------------------------------------------------

void add_io_options(CLI::App* cmd, std::vector<std::string>& inputs,
                    std::string& output, std::string& stats_path,
                    size_t& jobs) {
  cmd->add_option("input", inputs, "input file(s)")->required();
  cmd->add_option("-o,--output", output,
                  "output file, or directory for multiple inputs")
      ->required();
  cmd->add_option("--stats", stats_path,
                  "write the stats JSON here instead of stdout");
  cmd->add_option("--jobs", jobs, "process inputs with up to N threads")
      ->check(CLI::PositiveNumber);
}

void add_format_option(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "artifact encoding")
      ->check(CLI::IsMember({"binary", "text"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lossy compressors for numeric time series and point clouds"};
  app.require_subcommand(1);

  QuantizeOpts q;
  auto* quant = app.add_subcommand(
      "quantize-a", "replace values by an l1-optimal level codebook");
  add_io_options(quant, q.inputs, q.output, q.stats_path, q.jobs);
  add_format_option(quant, q.format);
  auto* opt_n = quant->add_option("--n", q.n_levels, "codebook size");
  auto* opt_delta = quant->add_option(
      "--max-cr-delta", q.max_cr_delta,
      "maximize compression s.t. mean absolute loss <= DELTA");
  auto* opt_cr = quant->add_option(
      "--min-loss-cr", q.min_loss_cr,
      "minimize loss s.t. compression rate >= PERCENT");

  BandedOpts b;
  auto* band = app.add_subcommand(
      "banded-b", "slice values inside a band, keep the rest exact");
  add_io_options(band, b.inputs, b.output, b.stats_path, b.jobs);
  add_format_option(band, b.format);
  auto* opt_low = band->add_option("--low", b.low, "lower band threshold");
  auto* opt_high = band->add_option("--high", b.high, "upper band threshold");
  band->add_option("--rolling", b.rolling,
                   "rolling band: window,lower_q,upper_q")
      ->delimiter(',');
  band->add_option("--slices", b.slices, "number of equal-width slices")
      ->required();
  band->add_option("--stat", b.stat, "slice representative")
      ->check(CLI::IsMember({"median", "mean"}));

  CoverageOpts c;
  auto* cover = app.add_subcommand(
      "coverage-c", "cluster a point cloud so every point sits within delta");
  add_io_options(cover, c.inputs, c.output, c.stats_path, c.jobs);
  add_format_option(cover, c.format);
  cover->add_option("--delta", c.delta, "coverage radius")->required();
  auto* opt_frac = cover->add_option(
      "--outlier-fraction", c.outlier_fraction,
      "store clusters smaller than this fraction exactly");
  auto* opt_norm = cover->add_option(
      "--normalcy-factor", c.normalcy_factor,
      "re-code through normalcy circles of factor * max cluster distance");
  cover->add_option("--seed", c.seed, "clustering seed")->envname("TSQ_SEED");
  cover->add_option("--sweep-csv", c.sweep_csv,
                    "write a per-K error table to this CSV");

  ReconstructOpts r;
  auto* rec = app.add_subcommand("reconstruct",
                                 "expand an artifact back to CSV");
  add_io_options(rec, r.inputs, r.output, r.stats_path, r.jobs);
  rec->add_option("--grid", r.grid,
                  "CSV whose first column supplies the timestamp grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  q.has_n = opt_n->count() > 0;
  q.has_delta = opt_delta->count() > 0;
  q.has_cr = opt_cr->count() > 0;
  b.has_low = opt_low->count() > 0;
  b.has_high = opt_high->count() > 0;
  c.has_fraction = opt_frac->count() > 0;
  c.has_factor = opt_norm->count() > 0;

  try {
    if (quant->parsed()) return run_quantize(q);
    if (band->parsed()) return run_banded(b);
    if (cover->parsed()) return run_coverage(c);
    return run_reconstruct(r);
  } catch (const std::exception& e) {
    std::cerr << "tsq: " << e.what() << "\n";
    return kRuntime;
  }
}
