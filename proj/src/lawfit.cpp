#include "lawfit.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "error.hpp"

namespace textphase {

LagRange parse_lag_range(std::string_view spec) {
  auto colon = spec.find(':');
  auto parse = [&](std::string_view s) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
      throw Error(Errc::InvalidArgument, "invalid lag range '" + std::string(spec) + "'");
    return v;
  };
  if (colon == std::string_view::npos)
    throw Error(Errc::InvalidArgument, "lag range must look like MIN:MAX");
  LagRange r{parse(spec.substr(0, colon)), parse(spec.substr(colon + 1))};
  if (r.min_lag < 1 || r.max_lag < r.min_lag)
    throw Error(Errc::InvalidArgument, "invalid lag range '" + std::string(spec) + "'");
  return r;
}

double FitResult::predict(double lag) const {
  return law == DecayLaw::Power ? amplitude * std::pow(lag, -rate)
                                : amplitude * std::exp(-rate * lag);
}

namespace {

struct InRange {
  std::vector<double> lags;
  std::vector<double> values;
  bool nonpositive = false;
};

InRange select(const AcfCurve& curve, LagRange range) {
  InRange s;
  for (const auto& p : curve.points) {
    if (p.lag < range.min_lag || p.lag > range.max_lag) continue;
    s.lags.push_back(static_cast<double>(p.lag));
    s.values.push_back(p.value);
    if (!(p.value > 0.0)) s.nonpositive = true;
  }
  return s;
}

constexpr std::size_t kMinFitPoints = 3;

FitResult fit(const AcfCurve& curve, LagRange range, DecayLaw law) {
  InRange s = select(curve, range);
  if (s.lags.size() < kMinFitPoints)
    throw Error(Errc::TooFewPoints, "decay fit needs at least 3 points in range, got " +
                                        std::to_string(s.lags.size()));
  if (s.nonpositive)
    throw Error(Errc::NonPositiveValues, "curve has nonpositive values inside the fit range");

  const std::size_t n = s.lags.size();
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = law == DecayLaw::Power ? std::log(s.lags[i]) : s.lags[i];
    y[i] = std::log(s.values[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  const double slope = sxy / sxx;

  FitResult r;
  r.law = law;
  r.rate = -slope;
  r.amplitude = std::exp(my - slope * mx);
  r.n_points = n;
  r.fit_range = range;
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    err += std::abs(s.values[i] - r.predict(s.lags[i])) / std::abs(s.values[i]);
  r.mape = err / static_cast<double>(n);
  return r;
}

}  // namespace

FitResult fit_power(const AcfCurve& curve, LagRange range) {
  return fit(curve, range, DecayLaw::Power);
}

FitResult fit_exponential(const AcfCurve& curve, LagRange range) {
  return fit(curve, range, DecayLaw::Exponential);
}

const char* status_name(GapelmaperStatus s) noexcept {
  switch (s) {
    case GapelmaperStatus::Ok: return "ok";
    case GapelmaperStatus::UndefinedNonpositiveAcf: return "undefined_nonpositive_acf";
    case GapelmaperStatus::TooFewPoints: return "too_few_points";
  }
  return "too_few_points";
}

GapelmaperResult gapelmaper(const AcfCurve& curve, LagRange range) {
  GapelmaperResult g;
  g.fit_range = range;
  InRange s = select(curve, range);
  if (s.lags.size() < kMinFitPoints) {
    g.status = GapelmaperStatus::TooFewPoints;
    return g;
  }
  if (s.nonpositive) {
    g.status = GapelmaperStatus::UndefinedNonpositiveAcf;
    return g;
  }
  g.power = fit_power(curve, range);
  g.exponential = fit_exponential(curve, range);
  g.status = GapelmaperStatus::Ok;
  const double num = g.power->mape;
  const double den = g.exponential->mape;
  if (den == 0.0)
    g.value = num == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  else
    g.value = num / den;
  return g;
}

}  // namespace textphase
