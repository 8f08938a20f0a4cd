#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "corpus.hpp"
#include "embeddings.hpp"
#include "error.hpp"
#include "lawfit.hpp"
#include "spectrum.hpp"

namespace textphase {

enum class Phase { Periodic = 0, Critical = 1, Amorphous = 2, Indeterminate = 3 };
inline constexpr std::size_t kPhaseCount = 4;

const char* phase_name(Phase p) noexcept;

struct PhaseLabel {
  Phase label = Phase::Indeterminate;
  double periodicity_metric = 0.0;
  GapelmaperResult gapelmaper;
  double periodicity_threshold = 0.0;
  double gapelmaper_threshold = 0.0;
};

// Periodic first, then the decay-law verdict; total over all inputs.
Phase decide_phase(double periodicity_metric, const GapelmaperResult& g,
                   double periodicity_threshold, double gapelmaper_threshold);

// Everything computed for one text, used by analyze and sweep.
struct PhaseAnalysis {
  PhaseLabel label;
  AcfCurve periodic_curve;
  SpectrumResult spectrum;
  AcfCurve fit_curve;
  // Long-range grid clamped to the sequence; fit range clamped alongside.
  AcfCurve long_curve;
  GapelmaperResult long_gapelmaper;
};

// Minimum sequence length for classify() under this config.
std::size_t required_length(const AnalysisConfig& config);

// Throws SequenceTooShort when seq.len() < required_length(config).
PhaseLabel classify(const VectorSequence& seq, const AnalysisConfig& config);
PhaseAnalysis analyze_sequence(const VectorSequence& seq, const AnalysisConfig& config);

// Geometric midpoint of the two fixture metrics.
double calibrate_periodicity_threshold(double periodic_metric, double shuffled_metric);

struct SweepRow {
  ManifestEntry entry;
  std::size_t word_count = 0;
  std::optional<PhaseAnalysis> analysis;
  std::optional<Errc> error_code;
  std::string error;
};

struct SweepSummary {
  std::string model;
  double temperature = 0.0;
  std::size_t entries = 0;
  std::array<std::size_t, kPhaseCount> phase_counts{};
  std::size_t errors = 0;
  double mean_metric = 0.0;
  double std_metric = 0.0;
  // Over rows whose GAPELMAPER status is ok.
  std::size_t gapelmaper_ok = 0;
  std::size_t gapelmaper_undefined = 0;
  double mean_gapelmaper = 0.0;
  double std_gapelmaper = 0.0;
  std::size_t long_gapelmaper_ok = 0;
  std::size_t long_gapelmaper_undefined = 0;
  double mean_long_gapelmaper = 0.0;
  double std_long_gapelmaper = 0.0;
};

struct SweepReport {
  std::vector<SweepRow> rows;  // ordered by (model, temperature, seed)
  std::vector<SweepSummary> summaries;
};

// Per-entry failures land in the row; the sweep itself only throws EmptyInput.
SweepReport sweep(const CorpusManifest& manifest, const EmbeddingTable& table,
                  const AnalysisConfig& config);

// Recomputes summaries from rows (also used to check report consistency).
std::vector<SweepSummary> summarize(const std::vector<SweepRow>& rows);

}  // namespace textphase
