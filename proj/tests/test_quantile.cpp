#include <doctest.h>

#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "tsq/metrics.hpp"
#include "tsq/quantile.hpp"

using namespace tsq;

namespace {

TimeSeries series_of(std::vector<double> values) {
  std::vector<int64_t> ts(values.size());
  for (size_t i = 0; i < ts.size(); ++i) ts[i] = int64_t(i) * 1000;
  return TimeSeries(std::move(ts), std::move(values));
}

std::vector<double> levels_of(const Codebook& book) {
  return {book.levels().begin(), book.levels().end()};
}

}  // namespace

TEST_CASE("fit_codebook worked examples") {
  auto s = series_of({1.0, 2.0, 8.0, 9.0});
  auto book = fit_codebook(s, 2);
  CHECK(levels_of(book) == std::vector<double>{1.0, 8.0});
  auto q = quantize(s, book);
  CHECK(l1_loss(s.values(), q.values()) == 0.5);

  auto full = fit_codebook(s, 4);
  CHECK(levels_of(full) == std::vector<double>{1.0, 2.0, 8.0, 9.0});
  CHECK(l1_loss(s.values(), quantize(s, full).values()) == 0.0);

  auto one = fit_codebook(series_of({1.0, 2.0, 4.0}), 1);
  CHECK(levels_of(one) == std::vector<double>{2.0});
  CHECK(l1_loss(std::vector<double>{1.0, 2.0, 4.0},
                quantize(series_of({1.0, 2.0, 4.0}), one).values()) == 1.0);
}

TEST_CASE("fit_codebook rejects out-of-range n") {
  auto s = series_of({1.0, 2.0, 2.0});
  CHECK_THROWS_AS(fit_codebook(s, 0), std::invalid_argument);
  CHECK_THROWS_AS(fit_codebook(s, 3), std::invalid_argument);
  CHECK(fit_codebook(s, 2).size() == 2);
}

TEST_CASE("fit_codebook matches the exhaustive oracle") {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 120; ++trial) {
    size_t n_values = 1 + rng() % 24;
    std::vector<double> values(n_values);
    for (auto& v : values) v = double(int(rng() % 9) - 3);
    auto s = series_of(values);
    std::vector<double> distinct(values);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (size_t n = 1; n <= distinct.size(); ++n) {
      auto fit = fit_codebook(s, n);
      auto expected = oracle::best_codebook(s.values(), n);
      double got = l1_loss(s.values(), quantize(s, fit).values());
      CHECK(got == expected.l1);
      CHECK(levels_of(fit) == expected.levels);
    }
  }
}

TEST_CASE("lexicographic tie-break on equally optimal codebooks") {
  // {1},{2,3} and {1,2},{3} both cost 1; the smaller sequence is [1,2].
  auto book = fit_codebook(series_of({1.0, 2.0, 3.0}), 2);
  CHECK(levels_of(book) == std::vector<double>{1.0, 2.0});
}

TEST_CASE("optimal l1 is non-increasing in n") {
  std::mt19937 rng(202);
  for (int trial = 0; trial < 20; ++trial) {
    size_t n_values = 2 + rng() % 40;
    std::vector<double> values(n_values);
    for (auto& v : values) v = double(int(rng() % 15) - 7) * 0.25;
    auto s = series_of(values);
    auto entries = sweep_codebooks(s);
    for (size_t i = 1; i < entries.size(); ++i) {
      CHECK(entries[i].l1 <= entries[i - 1].l1);
    }
    CHECK(entries.back().l1 == 0.0);
  }
}

TEST_CASE("quantize maps value-wise with an all-false exact mask") {
  auto s = series_of({1.0, 2.0, 8.0, 9.0});
  auto q = quantize(s, Codebook({1.0, 8.0}));
  CHECK(q.values()[0] == 1.0);
  CHECK(q.values()[1] == 1.0);
  CHECK(q.values()[2] == 8.0);
  CHECK(q.values()[3] == 8.0);
  for (bool exact : q.exact_mask()) CHECK_FALSE(exact);

  auto single = quantize(series_of({4.5}), Codebook({1.0, 8.0}));
  CHECK(single.values()[0] == 1.0);
}

TEST_CASE("optimize_max_cr worked examples") {
  auto s = series_of({1.0, 1.0, 1.0, 9.0, 9.0, 9.0});
  auto result = optimize_max_cr(s, 0.0);
  CHECK(result.feasible);
  CHECK(levels_of(result.codebook) == std::vector<double>{1.0, 9.0});
  CHECK(result.l1 == 0.0);
  CHECK(result.cr_percent == doctest::Approx(100.0 * 4 / 6).epsilon(1e-12));

  auto constant = optimize_max_cr(series_of({5.0, 5.0, 5.0, 5.0}), 0.0);
  CHECK(constant.feasible);
  CHECK(constant.n == 1);
  CHECK(constant.cr_percent == 75.0);

  auto spread = optimize_max_cr(series_of({1.0, 2.0, 8.0, 9.0}), 0.5);
  CHECK(spread.feasible);
  CHECK(spread.n == 2);
  CHECK(levels_of(spread.codebook) == std::vector<double>{1.0, 8.0});
  CHECK(spread.cr_percent == 50.0);
}

TEST_CASE("optimize_max_cr rejects negative delta") {
  CHECK_THROWS_AS(optimize_max_cr(series_of({1.0}), -0.1), std::invalid_argument);
}

TEST_CASE("optimize_min_loss worked examples") {
  auto s = series_of({1.0, 1.0, 1.0, 9.0, 9.0, 9.0});
  auto result = optimize_min_loss(s, 50.0);
  CHECK(result.feasible);
  CHECK(result.l1 == 0.0);
  CHECK(levels_of(result.codebook) == std::vector<double>{1.0, 9.0});

  auto strict = optimize_min_loss(series_of({1.0, 3.0, 6.0, 10.0}), 100.0);
  CHECK_FALSE(strict.feasible);

  auto lax = optimize_min_loss(series_of({1.0, 2.0, 8.0, 9.0}), 0.0);
  CHECK(lax.feasible);
  CHECK(lax.n == 4);
  CHECK(lax.l1 == 0.0);
}

TEST_CASE("optimize_min_loss rejects rates outside [0, 100]") {
  CHECK_THROWS_AS(optimize_min_loss(series_of({1.0}), -1.0), std::invalid_argument);
  CHECK_THROWS_AS(optimize_min_loss(series_of({1.0}), 100.5), std::invalid_argument);
}

TEST_CASE("constraint scans satisfy their bounds on random input") {
  std::mt19937 rng(303);
  for (int trial = 0; trial < 60; ++trial) {
    size_t n_values = 1 + rng() % 30;
    std::vector<double> values(n_values);
    for (auto& v : values) v = double(rng() % 12);
    auto s = series_of(values);

    double delta = double(rng() % 8) * 0.25;
    auto max_cr = optimize_max_cr(s, delta);
    CHECK(max_cr.feasible);
    CHECK(max_cr.l1 <= delta);

    double r = double(rng() % 101);
    auto min_loss = optimize_min_loss(s, r);
    if (min_loss.feasible) {
      CHECK(min_loss.cr_percent >= r);
    } else {
      auto entries = sweep_codebooks(s);
      for (const auto& entry : entries) CHECK(entry.cr_percent < r);
    }
  }
}
