#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "embeddings.hpp"

namespace textphase {

enum class LagPreset { PeriodicScan, MediumRange, LongRange, Custom };

const char* preset_name(LagPreset p) noexcept;

inline constexpr std::size_t kMinPairCount = 32;
inline constexpr std::size_t kPeriodicScanMaxLag = 100;
inline constexpr std::size_t kMediumRangeMaxLag = 600;
inline constexpr std::size_t kLongRangeMaxLag = 6000;
inline constexpr std::size_t kLagsPerDecade = 60;

struct LagGrid {
  std::vector<std::size_t> lags;  // strictly increasing, >= 1
  LagPreset preset = LagPreset::Custom;

  // Lags 1..100.
  static LagGrid periodic_scan();
  // Geometric grids, 60 points per decade rounded to unique integers.
  static LagGrid medium_range();
  static LagGrid long_range();
  static LagGrid geometric(std::size_t min_lag, std::size_t max_lag,
                           std::size_t per_decade = kLagsPerDecade);
  static LagGrid contiguous(std::size_t min_lag, std::size_t max_lag);
  // Validates ordering; throws InvalidArgument.
  static LagGrid custom(std::vector<std::size_t> lags);

  std::size_t max_lag() const { return lags.back(); }
  // Drops lags beyond max_admissible_lag(n). May return an empty grid.
  LagGrid clamped(std::size_t n) const;
};

// "periodic-scan", "medium-range", "long-range", a comma list "1,2,5", a
// contiguous range "1:100", or a geometric range "geo:1:600".
LagGrid parse_lag_grid(std::string_view spec);

// Largest lag with lag <= n/2 and n - lag >= kMinPairCount (0 if none).
std::size_t max_admissible_lag(std::size_t n) noexcept;

struct AcfPoint {
  std::size_t lag = 0;
  double value = 0.0;
  std::size_t pair_count = 0;
};

struct AcfCurve {
  std::vector<AcfPoint> points;
  std::size_t n = 0;
  std::string source_id;

  std::vector<std::size_t> lags() const;
  std::vector<double> values() const;
};

// Builds a curve from sampled values (pair_count = n - lag). Lags must be
// strictly increasing and < n.
AcfCurve make_curve(std::span<const std::size_t> lags, std::span<const double> values,
                    std::size_t n, std::string source_id = {});

// 0 when either vector has zero norm. Throws DimMismatch.
double cosine(std::span<const double> u, std::span<const double> v);

// Mean cosine at each lag, fixed left-to-right summation. Throws
// SequenceTooShort when the grid exceeds max_admissible_lag(seq.len()).
AcfCurve acf_direct(const VectorSequence& seq, const LagGrid& grid);

// Same quantity via zero-padded FFT autocorrelation of unit-normalized vectors.
AcfCurve acf_fft(const VectorSequence& seq, const LagGrid& grid);

}  // namespace textphase
