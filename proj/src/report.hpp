#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "config.hpp"
#include "phase.hpp"

namespace textphase {

inline constexpr const char* kVersion = "0.3.0";

// "%.9g"; non-finite values print as inf / -inf / nan.
std::string format_double(double v);

// Streaming JSON writer, two-space indentation, insertion-ordered keys.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);
  JsonWriter& value(double v);  // non-finite values are written as strings
  JsonWriter& value(long long v);
  JsonWriter& value(std::size_t v) { return value(static_cast<long long>(v)); }
  JsonWriter& value(int v) { return value(static_cast<long long>(v)); }
  JsonWriter& value(long v) { return value(static_cast<long long>(v)); }
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& null();

  std::string str() const { return out_ + "\n"; }

 private:
  void before_value();
  void newline();

  std::string out_;
  std::vector<bool> first_;  // per open container
  bool after_key_ = false;
};

std::string escape_json(std::string_view s);

struct TextInfo {
  std::string source_id;
  std::size_t word_count = 0;
  std::size_t oov_count = 0;
  std::size_t dim = 0;
};

std::string curve_csv(const AcfCurve& curve);
std::string spectrum_csv(const SpectrumResult& s);
void write_spectrum(JsonWriter& w, const SpectrumResult& s);
void write_gapelmaper(JsonWriter& w, const GapelmaperResult& g);
void write_label(JsonWriter& w, const PhaseLabel& l);
void write_config(JsonWriter& w, const AnalysisConfig& c);

std::string spectrum_json(const SpectrumResult& s);
std::string gapelmaper_json(const GapelmaperResult& g);
std::string label_json(const PhaseLabel& l, const TextInfo* info = nullptr);
std::string metadata_json(const AnalysisConfig& config, const TextInfo& info);

std::string sweep_rows_csv(const SweepReport& r);
// Mean/std periodicity metric per (model, temperature).
std::string transition_csv(const SweepReport& r);
// GAPELMAPER per (model, temperature) for the classification and long ranges.
std::string gapelmaper_table_csv(const SweepReport& r);
std::string sweep_summary_json(const SweepReport& r, const AnalysisConfig& config, std::size_t dim);

// Per-text bundle: acf_{periodic,medium,long}.csv, spectrum.{csv,json},
// fit_{medium,long}.json, phase.json, metadata.json [, plot.py].
void write_text_bundle(const std::filesystem::path& dir, const PhaseAnalysis& analysis,
                       const AnalysisConfig& config, const TextInfo& info, bool plot);
// Sweep bundle: sweep_rows.csv, transition.csv, gapelmaper_table.csv,
// summary.json [, plot.py].
void write_sweep_bundle(const std::filesystem::path& dir, const SweepReport& report,
                        const AnalysisConfig& config, std::size_t dim, bool plot);

// Self-contained matplotlib script that plots the CSVs written next to it.
std::string plot_script(bool sweep);

}  // namespace textphase
