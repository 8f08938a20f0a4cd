#pragma once

#include <cstddef>
#include <optional>

#include "acf.hpp"

namespace textphase {

enum class DecayLaw { Power, Exponential };

struct LagRange {
  std::size_t min_lag = 1;
  std::size_t max_lag = kMediumRangeMaxLag;
};

// "1:600"; throws InvalidArgument.
LagRange parse_lag_range(std::string_view spec);

struct FitResult {
  DecayLaw law = DecayLaw::Power;
  double amplitude = 0.0;  // a
  double rate = 0.0;       // b
  double mape = 0.0;
  std::size_t n_points = 0;
  LagRange fit_range;

  // a * lag^-b or a * exp(-b * lag)
  double predict(double lag) const;
};

// Ordinary least squares on (ln lag, ln C); MAPE in the original space.
// Throws NonPositiveValues, TooFewPoints.
FitResult fit_power(const AcfCurve& curve, LagRange range);
// Ordinary least squares on (lag, ln C).
FitResult fit_exponential(const AcfCurve& curve, LagRange range);

enum class GapelmaperStatus { Ok, UndefinedNonpositiveAcf, TooFewPoints };

const char* status_name(GapelmaperStatus s) noexcept;

struct GapelmaperResult {
  std::optional<double> value;  // power MAPE / exponential MAPE
  GapelmaperStatus status = GapelmaperStatus::TooFewPoints;
  std::optional<FitResult> power;
  std::optional<FitResult> exponential;
  LagRange fit_range;
};

// Never throws on curve content; failure modes are reported in status.
GapelmaperResult gapelmaper(const AcfCurve& curve, LagRange range);

}  // namespace textphase
