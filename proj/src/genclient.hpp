#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "corpus.hpp"

namespace textphase {

// exp(u/T) / sum exp(u'/T), max-subtracted. Throws NonFinite,
// NonPositiveTemperature, EmptyInput.
std::vector<double> temperature_softmax(std::span<const double> logits, double temperature);

// First paragraph of Moby-Dick, chapter 1.
extern const char* const kDefaultPrompt;

// 0.1, 0.4, ..., 2.5
std::vector<double> default_temperature_grid();
std::vector<long> default_seeds();

struct GenerationConfig {
  std::string endpoint_url;  // e.g. http://127.0.0.1:8000 ; "/v1/completions" is appended
  std::string model;
  std::string prompt = kDefaultPrompt;
  std::vector<double> temperatures = default_temperature_grid();
  std::vector<long> seeds = default_seeds();
  long target_tokens = 10000;
  long max_tokens_per_call = 512;
  // Tail of prompt + text so far sent as the next prompt; 0 sends everything.
  std::size_t context_chars = 8000;
  std::filesystem::path output_dir = ".";
  std::string api_key;
  bool require_auth = true;
  unsigned max_in_flight = 1;
  int max_attempts = 3;
  std::chrono::milliseconds backoff{500};
  std::chrono::seconds timeout{120};
  std::function<void(const std::string&)> log;

  // Throws InvalidArgument.
  void validate() const;
};

inline constexpr const char* kManifestFileName = "manifest.json";

// Runs every (temperature, seed) pair, writing <model>_t<T>_s<seed>.txt under
// output_dir plus manifest.json. Completed files listed in an existing
// manifest are skipped without any request. Throws AuthMissing,
// EndpointUnreachable, ServerError.
CorpusManifest generate_corpus(const GenerationConfig& config);

// manifest.json round trip (generator metadata included).
void write_manifest(const CorpusManifest& manifest, const std::filesystem::path& path);
CorpusManifest read_manifest(const std::filesystem::path& path);

}  // namespace textphase
