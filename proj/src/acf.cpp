#include "acf.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <thread>

#include "error.hpp"
#include "fft.hpp"

namespace textphase {

const char* preset_name(LagPreset p) noexcept {
  switch (p) {
    case LagPreset::PeriodicScan: return "periodic-scan";
    case LagPreset::MediumRange: return "medium-range";
    case LagPreset::LongRange: return "long-range";
    case LagPreset::Custom: return "custom";
  }
  return "custom";
}

LagGrid LagGrid::contiguous(std::size_t min_lag, std::size_t max_lag) {
  if (min_lag < 1 || max_lag < min_lag)
    throw Error(Errc::InvalidArgument, "invalid contiguous lag range");
  LagGrid g;
  for (std::size_t t = min_lag; t <= max_lag; ++t) g.lags.push_back(t);
  return g;
}

LagGrid LagGrid::geometric(std::size_t min_lag, std::size_t max_lag, std::size_t per_decade) {
  if (min_lag < 1 || max_lag < min_lag || per_decade == 0)
    throw Error(Errc::InvalidArgument, "invalid geometric lag range");
  LagGrid g;
  const double step = std::pow(10.0, 1.0 / static_cast<double>(per_decade));
  for (std::size_t k = 0;; ++k) {
    double x = static_cast<double>(min_lag) * std::pow(step, static_cast<double>(k));
    auto lag = static_cast<std::size_t>(std::llround(x));
    if (lag > max_lag) break;
    if (g.lags.empty() || lag > g.lags.back()) g.lags.push_back(lag);
  }
  if (g.lags.back() != max_lag) g.lags.push_back(max_lag);
  return g;
}

LagGrid LagGrid::periodic_scan() {
  LagGrid g = contiguous(1, kPeriodicScanMaxLag);
  g.preset = LagPreset::PeriodicScan;
  return g;
}

LagGrid LagGrid::medium_range() {
  LagGrid g = geometric(1, kMediumRangeMaxLag);
  g.preset = LagPreset::MediumRange;
  return g;
}

LagGrid LagGrid::long_range() {
  LagGrid g = geometric(1, kLongRangeMaxLag);
  g.preset = LagPreset::LongRange;
  return g;
}

LagGrid LagGrid::custom(std::vector<std::size_t> lags) {
  if (lags.empty()) throw Error(Errc::InvalidArgument, "lag grid is empty");
  if (lags.front() < 1) throw Error(Errc::InvalidArgument, "lags must be >= 1");
  for (std::size_t i = 1; i < lags.size(); ++i)
    if (lags[i] <= lags[i - 1])
      throw Error(Errc::InvalidArgument, "lags must be strictly increasing");
  LagGrid g;
  g.lags = std::move(lags);
  return g;
}

LagGrid LagGrid::clamped(std::size_t n) const {
  LagGrid g;
  g.preset = preset;
  const std::size_t limit = max_admissible_lag(n);
  for (std::size_t t : lags)
    if (t <= limit) g.lags.push_back(t);
  return g;
}

namespace {

std::size_t parse_size(std::string_view s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw Error(Errc::InvalidArgument, "invalid lag '" + std::string(s) + "'");
  return v;
}

}  // namespace

LagGrid parse_lag_grid(std::string_view spec) {
  if (spec == "periodic-scan") return LagGrid::periodic_scan();
  if (spec == "medium-range") return LagGrid::medium_range();
  if (spec == "long-range") return LagGrid::long_range();
  if (spec.rfind("geo:", 0) == 0) {
    auto rest = spec.substr(4);
    auto colon = rest.find(':');
    if (colon == std::string_view::npos)
      throw Error(Errc::InvalidArgument, "geometric grid must look like geo:MIN:MAX");
    return LagGrid::geometric(parse_size(rest.substr(0, colon)), parse_size(rest.substr(colon + 1)));
  }
  if (auto colon = spec.find(':'); colon != std::string_view::npos)
    return LagGrid::contiguous(parse_size(spec.substr(0, colon)), parse_size(spec.substr(colon + 1)));
  std::vector<std::size_t> lags;
  while (!spec.empty()) {
    auto comma = spec.find(',');
    lags.push_back(parse_size(spec.substr(0, comma)));
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
  }
  return LagGrid::custom(std::move(lags));
}

std::size_t max_admissible_lag(std::size_t n) noexcept {
  if (n <= kMinPairCount) return 0;
  return std::min(n / 2, n - kMinPairCount);
}

std::vector<std::size_t> AcfCurve::lags() const {
  std::vector<std::size_t> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.lag);
  return out;
}

std::vector<double> AcfCurve::values() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.value);
  return out;
}

AcfCurve make_curve(std::span<const std::size_t> lags, std::span<const double> values,
                    std::size_t n, std::string source_id) {
  if (lags.size() != values.size())
    throw Error(Errc::InvalidArgument, "lag and value counts differ");
  AcfCurve c;
  c.n = n;
  c.source_id = std::move(source_id);
  for (std::size_t i = 0; i < lags.size(); ++i) {
    if (lags[i] < 1 || lags[i] >= n || (i > 0 && lags[i] <= lags[i - 1]))
      throw Error(Errc::InvalidArgument, "curve lags must be increasing and within [1, n)");
    if (!std::isfinite(values[i])) throw Error(Errc::NonFinite, "curve value is not finite");
    c.points.push_back({lags[i], values[i], n - lags[i]});
  }
  return c;
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw Error(Errc::DimMismatch, "cosine of vectors of unequal size");
  double dot = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    dot += u[j] * v[j];
    uu += u[j] * u[j];
    vv += v[j] * v[j];
  }
  if (uu == 0.0 || vv == 0.0) return 0.0;
  return dot / (std::sqrt(uu) * std::sqrt(vv));
}

namespace {

void check_grid(const VectorSequence& seq, const LagGrid& grid) {
  if (grid.lags.empty()) throw Error(Errc::InvalidArgument, "lag grid is empty");
  const std::size_t limit = max_admissible_lag(seq.len());
  if (grid.max_lag() > limit)
    throw Error(Errc::SequenceTooShort,
                "sequence of length " + std::to_string(seq.len()) + " admits lags up to " +
                    std::to_string(limit) + ", grid needs " + std::to_string(grid.max_lag()));
}

unsigned worker_count(std::size_t work) {
  constexpr std::size_t kMinWorkPerThread = 1u << 22;
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::clamp<std::size_t>(work / kMinWorkPerThread, 1, hw));
}

}  // namespace

AcfCurve acf_direct(const VectorSequence& seq, const LagGrid& grid) {
  check_grid(seq, grid);
  const std::size_t n = seq.len();
  const std::size_t d = seq.dim();

  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = seq.row(i);
    double s = 0.0;
    for (double x : r) s += x * x;
    norms[i] = std::sqrt(s);
  }

  AcfCurve curve;
  curve.n = n;
  curve.points.resize(grid.lags.size());

  auto compute = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const std::size_t lag = grid.lags[k];
      const std::size_t pairs = n - lag;
      double sum = 0.0;
      for (std::size_t i = 0; i < pairs; ++i) {
        const double denom = norms[i] * norms[i + lag];
        if (denom == 0.0) continue;
        const double* a = seq.data().data() + i * d;
        const double* b = a + lag * d;
        double dot = 0.0;
        for (std::size_t j = 0; j < d; ++j) dot += a[j] * b[j];
        sum += dot / denom;
      }
      curve.points[k] = {lag, sum / static_cast<double>(pairs), pairs};
    }
  };

  // Parallel over lags only; each sum keeps its own fixed order.
  const unsigned workers = worker_count(grid.lags.size() * n * d);
  if (workers == 1) {
    compute(0, grid.lags.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (grid.lags.size() + workers - 1) / workers;
    for (std::size_t b = 0; b < grid.lags.size(); b += chunk)
      pool.emplace_back(compute, b, std::min(grid.lags.size(), b + chunk));
  }
  return curve;
}

AcfCurve acf_fft(const VectorSequence& seq, const LagGrid& grid) {
  check_grid(seq, grid);
  const std::size_t n = seq.len();
  const std::size_t d = seq.dim();

  std::vector<double> unit(seq.data().begin(), seq.data().end());
  for (std::size_t i = 0; i < n; ++i) {
    double* r = unit.data() + i * d;
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += r[j] * r[j];
    if (s == 0.0) continue;
    const double inv = 1.0 / std::sqrt(s);
    for (std::size_t j = 0; j < d; ++j) r[j] *= inv;
  }

  // Padding to >= 2n makes the circular correlation linear for all lags < n.
  RealFft fft(next_pow2(2 * n));
  std::vector<double> power(fft.bins(), 0.0);
  auto in = fft.real();
  for (std::size_t j = 0; j < d; ++j) {
    std::fill(in.begin(), in.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) in[i] = unit[i * d + j];
    fft.forward();
    auto spec = fft.spectrum();
    for (std::size_t k = 0; k < power.size(); ++k) power[k] += std::norm(spec[k]);
  }
  auto spec = fft.spectrum();
  for (std::size_t k = 0; k < power.size(); ++k) spec[k] = power[k];
  fft.inverse();

  const double scale = 1.0 / static_cast<double>(fft.size());
  AcfCurve curve;
  curve.n = n;
  curve.points.reserve(grid.lags.size());
  for (std::size_t lag : grid.lags) {
    const std::size_t pairs = n - lag;
    curve.points.push_back({lag, in[lag] * scale / static_cast<double>(pairs), pairs});
  }
  return curve;
}

}  // namespace textphase
