#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "acf.hpp"

namespace textphase {

struct SpectrumResult {
  std::vector<double> magnitudes;  // |X_k| / M for k = 0..M/2
  std::size_t peak_index = 0;      // argmax over k >= 1, first on ties
  double periodicity_metric = 0.0;
  double implied_period = 0.0;     // M / peak_index, in words
  std::size_t lag_count = 0;       // M
};

inline constexpr std::size_t kMinSpectrumLags = 8;

// DFT of the mean-subtracted curve values. Requires unit-step lags and at
// least kMinSpectrumLags of them (NonContiguousLags, TooFewLags).
SpectrumResult acf_spectrum(const AcfCurve& curve);

struct TransitionRow {
  double temperature = 0.0;
  double mean_metric = 0.0;
  double std_metric = 0.0;  // population standard deviation
  std::size_t count = 0;
};

// Groups by temperature (exact match), ordered by temperature. Throws EmptyInput.
std::vector<TransitionRow> transition_curve(
    const std::vector<std::pair<double, SpectrumResult>>& results);

}  // namespace textphase
