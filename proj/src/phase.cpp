#include "phase.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>
#include <tuple>

namespace textphase {

const char* phase_name(Phase p) noexcept {
  switch (p) {
    case Phase::Periodic: return "periodic";
    case Phase::Critical: return "critical";
    case Phase::Amorphous: return "amorphous";
    case Phase::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

Phase decide_phase(double periodicity_metric, const GapelmaperResult& g,
                   double periodicity_threshold, double gapelmaper_threshold) {
  if (periodicity_metric >= periodicity_threshold) return Phase::Periodic;
  if (g.status != GapelmaperStatus::Ok || !g.value) return Phase::Indeterminate;
  return *g.value < gapelmaper_threshold ? Phase::Critical : Phase::Amorphous;
}

namespace {

LagGrid fit_grid(const AnalysisConfig& config, LagRange range) {
  return LagGrid::geometric(range.min_lag, range.max_lag, config.lags_per_decade);
}

LagGrid union_grid(const LagGrid& a, const LagGrid& b) {
  std::vector<std::size_t> lags;
  std::set_union(a.lags.begin(), a.lags.end(), b.lags.begin(), b.lags.end(),
                 std::back_inserter(lags));
  return LagGrid::custom(std::move(lags));
}

AcfCurve restrict_to(const AcfCurve& full, const LagGrid& grid) {
  AcfCurve out;
  out.n = full.n;
  out.source_id = full.source_id;
  std::size_t k = 0;
  for (const auto& p : full.points) {
    while (k < grid.lags.size() && grid.lags[k] < p.lag) ++k;
    if (k < grid.lags.size() && grid.lags[k] == p.lag) out.points.push_back(p);
  }
  return out;
}

}  // namespace

std::size_t required_length(const AnalysisConfig& config) {
  const std::size_t max_lag = std::max(config.periodic_grid.max_lag(), config.fit_range.max_lag);
  std::size_t n = 2 * max_lag;
  while (max_admissible_lag(n) < max_lag) ++n;
  return n;
}

PhaseAnalysis analyze_sequence(const VectorSequence& seq, const AnalysisConfig& config) {
  const std::size_t need = required_length(config);
  if (seq.len() < need)
    throw Error(Errc::SequenceTooShort, "classification needs at least " + std::to_string(need) +
                                            " tokens, got " + std::to_string(seq.len()));

  const LagGrid medium = fit_grid(config, config.fit_range);
  const LagGrid long_grid = fit_grid(config, config.long_fit_range).clamped(seq.len());
  LagGrid all = union_grid(union_grid(config.periodic_grid, medium), long_grid);
  const AcfCurve full = acf_fft(seq, all);

  PhaseAnalysis a;
  a.periodic_curve = restrict_to(full, config.periodic_grid);
  a.fit_curve = restrict_to(full, medium);
  a.long_curve = restrict_to(full, long_grid);
  a.spectrum = acf_spectrum(a.periodic_curve);

  LagRange long_range = config.long_fit_range;
  long_range.max_lag = std::min(long_range.max_lag, max_admissible_lag(seq.len()));
  a.long_gapelmaper = gapelmaper(a.long_curve, long_range);

  PhaseLabel& l = a.label;
  l.periodicity_metric = a.spectrum.periodicity_metric;
  l.gapelmaper = gapelmaper(a.fit_curve, config.fit_range);
  l.periodicity_threshold = config.periodicity_threshold;
  l.gapelmaper_threshold = config.gapelmaper_threshold;
  l.label = decide_phase(l.periodicity_metric, l.gapelmaper, config.periodicity_threshold,
                         config.gapelmaper_threshold);
  return a;
}

PhaseLabel classify(const VectorSequence& seq, const AnalysisConfig& config) {
  return analyze_sequence(seq, config).label;
}

double calibrate_periodicity_threshold(double periodic_metric, double shuffled_metric) {
  if (!(periodic_metric > 0.0) || !(shuffled_metric > 0.0))
    throw Error(Errc::InvalidArgument, "calibration metrics must be positive");
  return std::sqrt(periodic_metric * shuffled_metric);
}

namespace {

struct Moments {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  m.n = xs.size();
  if (xs.empty()) return m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(m.n);
  double var = 0.0;
  for (double x : xs) var += (x - m.mean) * (x - m.mean);
  m.sd = std::sqrt(var / static_cast<double>(m.n));
  return m;
}

}  // namespace

std::vector<SweepSummary> summarize(const std::vector<SweepRow>& rows) {
  struct Acc {
    SweepSummary s;
    std::vector<double> metrics, gap, long_gap;
  };
  std::map<std::pair<std::string, double>, Acc> groups;
  for (const auto& r : rows) {
    auto& acc = groups[{r.entry.model, r.entry.temperature}];
    acc.s.model = r.entry.model;
    acc.s.temperature = r.entry.temperature;
    ++acc.s.entries;
    if (!r.analysis) {
      ++acc.s.errors;
      continue;
    }
    const PhaseLabel& l = r.analysis->label;
    ++acc.s.phase_counts[static_cast<std::size_t>(l.label)];
    acc.metrics.push_back(l.periodicity_metric);
    if (l.gapelmaper.status == GapelmaperStatus::Ok)
      acc.gap.push_back(*l.gapelmaper.value);
    else if (l.gapelmaper.status == GapelmaperStatus::UndefinedNonpositiveAcf)
      ++acc.s.gapelmaper_undefined;
    const auto& lg = r.analysis->long_gapelmaper;
    if (lg.status == GapelmaperStatus::Ok)
      acc.long_gap.push_back(*lg.value);
    else if (lg.status == GapelmaperStatus::UndefinedNonpositiveAcf)
      ++acc.s.long_gapelmaper_undefined;
  }
  std::vector<SweepSummary> out;
  for (auto& [key, acc] : groups) {
    Moments m = moments(acc.metrics);
    acc.s.mean_metric = m.mean;
    acc.s.std_metric = m.sd;
    Moments g = moments(acc.gap);
    acc.s.gapelmaper_ok = g.n;
    acc.s.mean_gapelmaper = g.mean;
    acc.s.std_gapelmaper = g.sd;
    Moments lg = moments(acc.long_gap);
    acc.s.long_gapelmaper_ok = lg.n;
    acc.s.mean_long_gapelmaper = lg.mean;
    acc.s.std_long_gapelmaper = lg.sd;
    out.push_back(acc.s);
  }
  return out;
}

SweepReport sweep(const CorpusManifest& manifest, const EmbeddingTable& table,
                  const AnalysisConfig& config) {
  if (manifest.entries.empty()) throw Error(Errc::EmptyInput, "manifest has no entries");

  SweepReport report;
  report.rows.resize(manifest.entries.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < manifest.entries.size(); i = next++) {
      SweepRow& row = report.rows[i];
      row.entry = manifest.entries[i];
      try {
        auto tokens = tokenize(read_text_file(row.entry.path));
        row.word_count = tokens.size();
        row.analysis = analyze_sequence(embed_and_center(tokens, table), config);
      } catch (const Error& e) {
        row.error_code = e.code();
        row.error = e.what();
      } catch (const std::exception& e) {
        row.error_code = Errc::InvalidArgument;
        row.error = e.what();
      }
    }
  };

  unsigned threads = config.threads ? config.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(manifest.entries.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  std::stable_sort(report.rows.begin(), report.rows.end(), [](const auto& a, const auto& b) {
    return std::tie(a.entry.model, a.entry.temperature, a.entry.seed) <
           std::tie(b.entry.model, b.entry.temperature, b.entry.seed);
  });
  report.summaries = summarize(report.rows);
  return report;
}

}  // namespace textphase
