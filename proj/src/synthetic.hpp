#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "embeddings.hpp"

namespace textphase::synthetic {

// Platform-independent draws on top of std::mt19937_64 (the standard
// distributions are implementation-defined, fixtures must not be).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform();                       // [0, 1)
  double normal();                        // Box-Muller
  std::size_t below(std::size_t bound);   // [0, bound)

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// The degenerate three-line cycle "and in the act of devouring a man/whale/ship".
std::vector<std::string> devouring_cycle();

// Repeats (and truncates) a token cycle to exactly n tokens.
std::vector<std::string> repeat_to(const std::vector<std::string>& cycle, std::size_t n);

std::vector<std::string> shuffled(std::vector<std::string> tokens, std::uint64_t seed);

// "w0".."w<size-1>"
std::vector<std::string> lexicon(std::size_t size);

// n tokens drawn uniformly and independently from lexicon(lexicon_size).
std::vector<std::string> iid_tokens(std::size_t lexicon_size, std::size_t n, std::uint64_t seed);

// Standard-normal vectors for the given words.
EmbeddingTable random_embeddings(const std::vector<std::string>& words, std::size_t dim,
                                 std::uint64_t seed);

// Long-memory surrogate: a latent dim-dimensional 1/f^exponent Gaussian process
// (spectral synthesis) plus white noise of standard deviation `noise`, mapped at
// every position to the table word with the largest dot product.
std::vector<std::string> long_memory_tokens(const EmbeddingTable& table, std::size_t n,
                                            double spectral_exponent, double noise,
                                            std::uint64_t seed);

inline constexpr std::size_t kIidLexiconSize = 1000;
inline constexpr std::size_t kCriticalLexiconSize = 500;
inline constexpr double kCriticalSpectralExponent = 0.9;
inline constexpr double kCriticalNoise = 1.0;

enum class FixtureKind { Periodic, Shuffled, Iid, Critical };

// Throws InvalidArgument for unknown names.
FixtureKind parse_fixture_kind(std::string_view name);

struct Fixture {
  std::vector<std::string> tokens;
  EmbeddingTable table;  // random vectors covering the fixture vocabulary
};

// periodic: devouring cycle repeated to n; shuffled: the same tokens permuted;
// iid: uniform over a 1000-word lexicon; critical: long_memory_tokens over a
// 500-word lexicon.
Fixture make_fixture(FixtureKind kind, std::size_t n, std::size_t dim, std::uint64_t seed);

}  // namespace textphase::synthetic
