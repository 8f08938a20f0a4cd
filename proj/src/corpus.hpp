#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace textphase {

struct TextMeta {
  std::string model;
  double temperature = 0.0;
  long seed = 0;
};

struct TokenSequence {
  std::vector<std::string> tokens;
  std::string source_id;
  std::optional<TextMeta> meta;
};

// Splits on Unicode whitespace, trims punctuation at both ends of each piece,
// lowercases, drops empty pieces. Input is treated as UTF-8; invalid bytes are
// kept as-is.
std::vector<std::string> tokenize(std::string_view text);

struct ManifestEntry {
  std::filesystem::path path;
  std::string model;
  double temperature = 0.0;
  long seed = 0;
  // Filled by the generator; absent for scanned corpora.
  std::optional<long> model_tokens;
  std::optional<long> word_count;
  bool truncated = false;
  long calls = 0;
  long retries = 0;
};

struct CorpusManifest {
  std::filesystem::path root;
  std::vector<ManifestEntry> entries;  // ordered by (model, temperature, seed)
  std::vector<std::filesystem::path> skipped;
};

// "<model>_t<temperature>_s<seed>.txt"
std::string corpus_file_name(std::string_view model, double temperature, long seed);
std::optional<TextMeta> parse_corpus_file_name(std::string_view file_name);

// Shortest round-trip decimal with at least one fractional digit ("1.0", "0.7").
std::string format_temperature(double t);

// Recursive scan. Throws NotADirectory, DuplicateTriple.
CorpusManifest scan_corpus(const std::filesystem::path& root);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace textphase
