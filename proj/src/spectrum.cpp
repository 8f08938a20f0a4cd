#include "spectrum.hpp"

#include <cmath>
#include <map>

#include "error.hpp"
#include "fft.hpp"

namespace textphase {

SpectrumResult acf_spectrum(const AcfCurve& curve) {
  const std::size_t m = curve.points.size();
  if (m < kMinSpectrumLags)
    throw Error(Errc::TooFewLags, "spectrum needs at least " + std::to_string(kMinSpectrumLags) +
                                      " lags, got " + std::to_string(m));
  for (std::size_t i = 1; i < m; ++i)
    if (curve.points[i].lag != curve.points[i - 1].lag + 1)
      throw Error(Errc::NonContiguousLags, "spectrum requires a unit-step lag grid");

  double mean = 0.0;
  for (const auto& p : curve.points) mean += p.value;
  mean /= static_cast<double>(m);

  RealFft fft(m);
  auto in = fft.real();
  for (std::size_t i = 0; i < m; ++i) in[i] = curve.points[i].value - mean;
  fft.forward();

  SpectrumResult r;
  r.lag_count = m;
  auto spec = fft.spectrum();
  const std::size_t half = m / 2;
  r.magnitudes.resize(half + 1);
  for (std::size_t k = 0; k <= half; ++k)
    r.magnitudes[k] = std::abs(spec[k]) / static_cast<double>(m);

  r.peak_index = 1;
  for (std::size_t k = 2; k <= half; ++k)
    if (r.magnitudes[k] > r.magnitudes[r.peak_index]) r.peak_index = k;
  r.periodicity_metric = r.magnitudes[r.peak_index];
  r.implied_period = static_cast<double>(m) / static_cast<double>(r.peak_index);
  return r;
}

std::vector<TransitionRow> transition_curve(
    const std::vector<std::pair<double, SpectrumResult>>& results) {
  if (results.empty()) throw Error(Errc::EmptyInput, "no spectrum results to aggregate");
  std::map<double, std::vector<double>> groups;
  for (const auto& [t, s] : results) groups[t].push_back(s.periodicity_metric);

  std::vector<TransitionRow> rows;
  for (const auto& [t, metrics] : groups) {
    const double n = static_cast<double>(metrics.size());
    double mean = 0.0;
    for (double v : metrics) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : metrics) var += (v - mean) * (v - mean);
    rows.push_back({t, mean, std::sqrt(var / n), metrics.size()});
  }
  return rows;
}

}  // namespace textphase
