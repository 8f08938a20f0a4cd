#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "acf.hpp"
#include "error.hpp"
#include "oracles.hpp"

using namespace textphase;

namespace {

VectorSequence seq_of(const oracle::Rows& rows) {
  return VectorSequence::raw(rows.front().size(), oracle::flatten(rows));
}

Errc error_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc{};
}

}  // namespace

TEST_CASE("cosine examples") {
  std::vector<double> a{1, 0}, b{0, 1}, c{1, 1}, z{0, 0}, v{0.3, -2.0};
  CHECK(cosine(v, v) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cosine(a, b) == 0.0);
  CHECK(std::abs(cosine(a, c) - 0.70710678118654752) < 1e-15);
  CHECK(cosine(z, c) == 0.0);
  CHECK(cosine(c, z) == 0.0);
  std::vector<double> three{1, 2, 3};
  CHECK(error_of([&] { cosine(a, three); }) == Errc::DimMismatch);
}

TEST_CASE("lag presets") {
  auto p = LagGrid::periodic_scan();
  REQUIRE(p.lags.size() == 100);
  for (std::size_t i = 0; i < 100; ++i) CHECK(p.lags[i] == i + 1);
  CHECK(p.preset == LagPreset::PeriodicScan);

  for (auto g : {LagGrid::medium_range(), LagGrid::long_range()}) {
    CHECK(g.lags.front() == 1);
    for (std::size_t i = 1; i < g.lags.size(); ++i) CHECK(g.lags[i] > g.lags[i - 1]);
  }
  auto m = LagGrid::medium_range();
  CHECK(m.max_lag() == 600);
  CHECK(m.preset == LagPreset::MediumRange);
  auto l = LagGrid::long_range();
  CHECK(l.max_lag() == 6000);

  // Independent construction: round(10^(k/60)), deduplicated, endpoint appended.
  std::vector<std::size_t> expect;
  for (int k = 0;; ++k) {
    auto lag = static_cast<std::size_t>(std::llround(std::pow(10.0, k / 60.0)));
    if (lag > 600) break;
    if (expect.empty() || lag != expect.back()) expect.push_back(lag);
  }
  if (expect.back() != 600) expect.push_back(600);
  CHECK(m.lags == expect);
  // No rounding collisions above 100, so the decade density shows up directly.
  CHECK(std::count_if(m.lags.begin(), m.lags.end(), [](auto x) { return x >= 100; }) ==
        doctest::Approx(60 * std::log10(6.0)).epsilon(0.05));
}

TEST_CASE("parse_lag_grid") {
  CHECK(parse_lag_grid("periodic-scan").lags.size() == 100);
  CHECK(parse_lag_grid("medium-range").max_lag() == 600);
  CHECK(parse_lag_grid("long-range").max_lag() == 6000);
  CHECK(parse_lag_grid("1,2,5").lags == std::vector<std::size_t>{1, 2, 5});
  CHECK(parse_lag_grid("3:7").lags == std::vector<std::size_t>{3, 4, 5, 6, 7});
  CHECK(parse_lag_grid("geo:1:600").lags == LagGrid::medium_range().lags);
  CHECK(parse_lag_grid("7").lags == std::vector<std::size_t>{7});
  for (const char* bad : {"", "0,1", "2,1", "1,1", "a", "5:3", "1,,2", "geo:5", "-1", "1:x"})
    CHECK_MESSAGE(error_of([&] { parse_lag_grid(bad); }) == Errc::InvalidArgument, bad);
}

TEST_CASE("admissible lag and clamping") {
  CHECK(max_admissible_lag(10000) == 5000);
  CHECK(max_admissible_lag(64) == 32);
  CHECK(max_admissible_lag(60) == 28);
  CHECK(max_admissible_lag(32) == 0);
  CHECK(max_admissible_lag(0) == 0);
  auto c = LagGrid::long_range().clamped(10000);
  CHECK(c.max_lag() <= 5000);
  CHECK(c.lags.size() < LagGrid::long_range().lags.size());
  CHECK(LagGrid::periodic_scan().clamped(10).lags.empty());
}

TEST_CASE("constant and alternating sequences") {
  oracle::Rows rows(300, std::vector<double>{1.0, 0.0});
  auto c = acf_direct(seq_of(rows), LagGrid::contiguous(1, 100));
  for (const auto& p : c.points) {
    CHECK(p.value == 1.0);
    CHECK(p.pair_count == 300 - p.lag);
  }
  for (std::size_t i = 1; i < rows.size(); i += 2) rows[i][0] = -1.0;
  auto s = seq_of(rows);
  auto d = acf_direct(s, LagGrid::contiguous(1, 100));
  auto f = acf_fft(s, LagGrid::contiguous(1, 100));
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    const double expect = d.points[i].lag % 2 ? -1.0 : 1.0;
    CHECK(d.points[i].value == expect);
    CHECK(std::abs(f.points[i].value - expect) < 1e-9);
  }
}

TEST_CASE("direct path matches the double-loop oracle") {
  auto rows = oracle::gaussian_rows(512, 8, 101);
  auto c = acf_direct(seq_of(rows), LagGrid::contiguous(1, 64));
  REQUIRE(c.points.size() == 64);
  for (const auto& p : c.points) CHECK(std::abs(p.value - oracle::acf(rows, p.lag)) < 1e-12);
}

TEST_CASE("fft path matches direct on 4096 x 50, lags 1..2048") {
  auto rows = oracle::gaussian_rows(4096, 50, 7);
  auto s = seq_of(rows);
  auto grid = LagGrid::contiguous(1, 2048);
  auto d = acf_direct(s, grid);
  auto f = acf_fft(s, grid);
  double worst = 0;
  for (std::size_t i = 0; i < d.points.size(); ++i)
    worst = std::max(worst, std::abs(d.points[i].value - f.points[i].value));
  CHECK(worst < 1e-9);
}

TEST_CASE("randomized path equivalence and bounds") {
  std::mt19937_64 g(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 64 + g() % (2048 - 64 + 1);
    const std::size_t d = 1 + g() % 64;
    auto rows = oracle::gaussian_rows(n, d, g());
    // Sprinkle zero rows (OOV positions) and a common offset to vary the angles.
    for (std::size_t i = 0; i < n; i += 7 + g() % 13) std::fill(rows[i].begin(), rows[i].end(), 0.0);
    if (trial % 3 == 0)
      for (auto& r : rows)
        if (r[0] != 0.0) r[0] += 2.0;
    auto s = seq_of(rows);
    auto grid = LagGrid::geometric(1, max_admissible_lag(n), 30);
    auto a = acf_direct(s, grid);
    auto b = acf_fft(s, grid);
    double worst = 0;
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      worst = std::max(worst, std::abs(a.points[i].value - b.points[i].value));
      CHECK(std::abs(a.points[i].value) <= 1.0 + 1e-9);
      CHECK(std::abs(b.points[i].value) <= 1.0 + 1e-9);
    }
    CHECK_MESSAGE(worst < 1e-9, "n=" << n << " d=" << d);
  }
}

TEST_CASE("appending zero vectors only changes the divisor") {
  auto rows = oracle::gaussian_rows(400, 6, 55);
  auto grid = LagGrid::contiguous(1, 150);
  auto base = acf_direct(seq_of(rows), grid);
  const std::size_t k = 25;
  auto padded = rows;
  for (std::size_t i = 0; i < k; ++i) padded.emplace_back(6, 0.0);
  auto ext = acf_direct(seq_of(padded), grid);
  for (std::size_t i = 0; i < grid.lags.size(); ++i) {
    const double tau = static_cast<double>(grid.lags[i]);
    const double rescaled = base.points[i].value * (400.0 - tau) / (425.0 - tau);
    CHECK(std::abs(ext.points[i].value - rescaled) < 1e-12);
    CHECK(std::abs(ext.points[i].value - oracle::acf(padded, grid.lags[i])) < 1e-12);
  }
}

TEST_CASE("determinism and scale invariance") {
  auto rows = oracle::gaussian_rows(1000, 12, 3);
  auto s = seq_of(rows);
  auto grid = LagGrid::medium_range().clamped(1000);
  auto a = acf_fft(s, grid);
  auto b = acf_fft(s, grid);
  auto c = acf_direct(s, grid);
  auto d = acf_direct(s, grid);
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].value == b.points[i].value);
    CHECK(c.points[i].value == d.points[i].value);
  }
  auto scaled = acf_direct(s.scaled(3.5), grid);
  for (std::size_t i = 0; i < c.points.size(); ++i)
    CHECK(std::abs(scaled.points[i].value - c.points[i].value) < 1e-12);
}

TEST_CASE("grid longer than the sequence") {
  auto rows = oracle::gaussian_rows(150, 4, 1);
  auto s = seq_of(rows);
  CHECK(error_of([&] { acf_direct(s, LagGrid::periodic_scan()); }) == Errc::SequenceTooShort);
  CHECK(error_of([&] { acf_fft(s, LagGrid::periodic_scan()); }) == Errc::SequenceTooShort);
  CHECK(acf_fft(s, LagGrid::contiguous(1, 75)).points.size() == 75);
}

TEST_CASE("make_curve") {
  std::vector<std::size_t> lags{1, 2, 4};
  std::vector<double> vals{0.5, 0.4, 0.3};
  auto c = make_curve(lags, vals, 100, "x");
  CHECK(c.points[2].pair_count == 96);
  CHECK(c.source_id == "x");
  std::vector<std::size_t> bad{2, 1, 4};
  CHECK(error_of([&] { make_curve(bad, vals, 100); }) == Errc::InvalidArgument);
}

TEST_CASE("fft path is faster than direct at N=10000, d=300" * doctest::timeout(120)) {
  auto rows = oracle::gaussian_rows(10000, 300, 9);
  auto s = seq_of(rows);
  auto grid = LagGrid::contiguous(1, max_admissible_lag(10000));
  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  auto f = acf_fft(s, grid);
  auto t1 = clock::now();
  auto d = acf_direct(s, grid);
  auto t2 = clock::now();
  MESSAGE("fft " << std::chrono::duration<double>(t1 - t0).count() << " s, direct "
                 << std::chrono::duration<double>(t2 - t1).count() << " s");
  CHECK((t1 - t0) < (t2 - t1));
  CHECK(std::abs(f.points.back().value - d.points.back().value) < 1e-9);
}
