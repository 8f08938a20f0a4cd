#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "acf.hpp"
#include "lawfit.hpp"

namespace textphase {

// Geometric midpoint of the periodic-fixture and shuffled-fixture metrics
// (10000 words, d = 50, seed 1), see calibrate_periodicity_threshold() and
// tests/unit/test_phase.cpp.
inline constexpr double kDefaultPeriodicityThreshold = 0.00986894329;
inline constexpr double kDefaultGapelmaperThreshold = 1.0;

struct AnalysisConfig {
  double periodicity_threshold = kDefaultPeriodicityThreshold;
  double gapelmaper_threshold = kDefaultGapelmaperThreshold;
  LagGrid periodic_grid = LagGrid::periodic_scan();
  LagRange fit_range{1, kMediumRangeMaxLag};
  LagRange long_fit_range{1, kLongRangeMaxLag};
  std::size_t lags_per_decade = kLagsPerDecade;
  unsigned threads = 0;  // 0 = hardware concurrency

  // Applies one "key = value" setting; throws Error{Config}.
  void set(std::string_view key, std::string_view value);
};

// Key-value text format:
//   # comment
//   periodicity_threshold = 0.03
//   gapelmaper_threshold  = 1
//   periodic_lags         = 1:100
//   fit_range             = 1:600
//   long_fit_range        = 1:6000
//   lags_per_decade       = 60
//   threads               = 4
AnalysisConfig parse_config(std::istream& in);
AnalysisConfig load_config(const std::filesystem::path& path);

}  // namespace textphase
