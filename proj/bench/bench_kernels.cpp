// Timing harness for the serial/parallel kernel pairs. Each pair is run on
// the same inputs; outputs are compared bitwise before the numbers are
// trusted. Returns nonzero if any pair disagrees.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tsq/kernels.hpp"

namespace {

constexpr int kRepeats = 3;

template <typename F>
double best_seconds(F&& f) {
  double best = 1e300;
  for (int r = 0; r < kRepeats; ++r) {
    auto start = std::chrono::steady_clock::now();
    f();
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             start)
                   .count();
    best = std::min(best, s);
  }
  return best;
}

bool report(const char* name, size_t n, double serial, double parallel,
            bool parity) {
  std::printf("%-22s %10zu   %8.3fs   %8.3fs   %5.2fx   %s\n", name, n, serial,
              parallel, serial / parallel, parity ? "ok" : "MISMATCH");
  return parity;
}

std::vector<double> sorted_unique(std::mt19937_64& rng, size_t n, double lo,
                                  double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("%-22s %10s   %9s   %9s   %6s   %s\n", "kernel", "n", "serial",
              "parallel", "speedup", "parity");

  std::mt19937_64 rng(42);
  bool all_ok = true;

  {
    const size_t n = 8'000'000;
    std::uniform_real_distribution<double> dist(-1000.0, 1000.0);
    std::vector<double> values(n);
    for (auto& v : values) v = dist(rng);
    auto levels = sorted_unique(rng, 64, -1000.0, 1000.0);
    std::vector<double> out_serial(n), out_parallel(n);

    double s = best_seconds([&] {
      tsq::kernels::map_nearest_levels_serial(values, levels, out_serial);
    });
    double p = best_seconds([&] {
      tsq::kernels::map_nearest_levels(values, levels, out_parallel);
    });
    all_ok &= report("map_nearest_levels", n, s, p, out_serial == out_parallel);
  }

  {
    const size_t v = 4000;
    auto sorted_values = sorted_unique(rng, v + v / 4, -500.0, 500.0);
    sorted_values.resize(std::min(sorted_values.size(), v));
    const size_t m = sorted_values.size();

    std::uniform_real_distribution<double> weight_dist(1.0, 50.0);
    std::vector<double> prefix_w(m), prefix_ws(m);
    double cw = 0.0, cws = 0.0;
    for (size_t i = 0; i < m; ++i) {
      double w = weight_dist(rng);
      cw += w;
      cws += w * sorted_values[i];
      prefix_w[i] = cw;
      prefix_ws[i] = cws;
    }
    const size_t cells = 2;
    std::vector<double> prev(m + 1, 0.0);
    for (size_t i = m; i-- > 0;) {
      prev[i] = tsq::kernels::dp_cell_cost(prefix_w, prefix_ws, sorted_values,
                                           i, m - 1);
    }
    const size_t layer = m - cells + 1;
    std::vector<double> out_serial(layer), out_parallel(layer);

    double s = best_seconds([&] {
      tsq::kernels::dp_layer_serial(prefix_w, prefix_ws, sorted_values, prev,
                                    cells, out_serial);
    });
    double p = best_seconds([&] {
      tsq::kernels::dp_layer(prefix_w, prefix_ws, sorted_values, prev, cells,
                             out_parallel);
    });
    all_ok &= report("dp_layer", m, s, p, out_serial == out_parallel);
  }

  {
    const size_t n = 1'000'000, k = 64, dim = 4;
    std::uniform_real_distribution<double> dist(-100.0, 100.0);
    std::vector<double> points(n * dim), centroids(k * dim);
    for (auto& x : points) x = dist(rng);
    for (auto& x : centroids) x = dist(rng);
    std::vector<uint32_t> out_serial(n), out_parallel(n);

    double s = best_seconds([&] {
      tsq::kernels::assign_nearest_serial(points, n, centroids, k, dim,
                                          out_serial);
    });
    double p = best_seconds([&] {
      tsq::kernels::assign_nearest(points, n, centroids, k, dim, out_parallel);
    });
    all_ok &= report("assign_nearest", n, s, p, out_serial == out_parallel);
  }

  return all_ok ? 0 : 1;
}
