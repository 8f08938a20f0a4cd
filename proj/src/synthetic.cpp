#include "synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "error.hpp"
#include "fft.hpp"

namespace textphase::synthetic {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 == 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

std::size_t Rng::below(std::size_t bound) {
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = 0;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

std::vector<std::string> devouring_cycle() {
  std::vector<std::string> out;
  for (const char* noun : {"man", "whale", "ship"}) {
    for (const char* w : {"and", "in", "the", "act", "of", "devouring", "a"}) out.emplace_back(w);
    out.emplace_back(noun);
  }
  return out;
}

std::vector<std::string> repeat_to(const std::vector<std::string>& cycle, std::size_t n) {
  if (cycle.empty()) throw Error(Errc::EmptyInput, "cannot repeat an empty cycle");
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(cycle[i % cycle.size()]);
  return out;
}

std::vector<std::string> shuffled(std::vector<std::string> tokens, std::uint64_t seed) {
  Rng rng(seed);
  for (std::size_t i = tokens.size(); i > 1; --i) std::swap(tokens[i - 1], tokens[rng.below(i)]);
  return tokens;
}

std::vector<std::string> lexicon(std::size_t size) {
  std::vector<std::string> out;
  out.reserve(size);
  for (std::size_t i = 0; i < size; ++i) out.push_back("w" + std::to_string(i));
  return out;
}

std::vector<std::string> iid_tokens(std::size_t lexicon_size, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back("w" + std::to_string(rng.below(lexicon_size)));
  return out;
}

EmbeddingTable random_embeddings(const std::vector<std::string>& words, std::size_t dim,
                                 std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> data(words.size() * dim);
  for (double& v : data) v = rng.normal();
  return EmbeddingTable(dim, words, std::move(data));
}

std::vector<std::string> long_memory_tokens(const EmbeddingTable& table, std::size_t n,
                                            double spectral_exponent, double noise,
                                            std::uint64_t seed) {
  if (n < 2) throw Error(Errc::InvalidArgument, "long-memory fixture needs n >= 2");
  const std::size_t dim = table.dim();
  Rng rng(seed);

  // Twice the length so the periodic wrap of the synthesis does not show.
  RealFft fft(next_pow2(2 * n));
  std::vector<double> latent(n * dim);
  for (std::size_t j = 0; j < dim; ++j) {
    auto spec = fft.spectrum();
    spec[0] = 0.0;
    for (std::size_t k = 1; k < spec.size(); ++k) {
      const double amp = std::pow(static_cast<double>(k), -spectral_exponent / 2.0);
      spec[k] = {amp * rng.normal(), amp * rng.normal()};
    }
    fft.inverse();
    auto x = fft.real();
    double mean = 0.0, var = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += x[i];
    mean /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) var += (x[i] - mean) * (x[i] - mean);
    const double inv_sd = 1.0 / std::sqrt(var / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) latent[i * dim + j] = (x[i] - mean) * inv_sd;
  }

  std::vector<std::string> out;
  out.reserve(n);
  std::vector<double> z(dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < dim; ++j) z[j] = latent[i * dim + j] + noise * rng.normal();
    std::size_t best = 0;
    double best_dot = -INFINITY;
    for (std::size_t w = 0; w < table.word_count(); ++w) {
      auto v = table.vector_at(w);
      double dot = 0.0;
      for (std::size_t j = 0; j < dim; ++j) dot += v[j] * z[j];
      if (dot > best_dot) {
        best_dot = dot;
        best = w;
      }
    }
    out.push_back(table.words()[best]);
  }
  return out;
}

FixtureKind parse_fixture_kind(std::string_view name) {
  if (name == "periodic") return FixtureKind::Periodic;
  if (name == "shuffled") return FixtureKind::Shuffled;
  if (name == "iid") return FixtureKind::Iid;
  if (name == "critical") return FixtureKind::Critical;
  throw Error(Errc::InvalidArgument, "unknown synthetic fixture '" + std::string(name) + "'");
}

Fixture make_fixture(FixtureKind kind, std::size_t n, std::size_t dim, std::uint64_t seed) {
  switch (kind) {
    case FixtureKind::Periodic:
    case FixtureKind::Shuffled: {
      auto cycle = devouring_cycle();
      std::vector<std::string> vocab;
      for (const auto& w : cycle)
        if (std::find(vocab.begin(), vocab.end(), w) == vocab.end()) vocab.push_back(w);
      auto tokens = repeat_to(cycle, n);
      if (kind == FixtureKind::Shuffled) tokens = shuffled(std::move(tokens), seed ^ 0x5eedULL);
      return {std::move(tokens), random_embeddings(vocab, dim, seed)};
    }
    case FixtureKind::Iid:
      return {iid_tokens(kIidLexiconSize, n, seed ^ 0x11dULL),
              random_embeddings(lexicon(kIidLexiconSize), dim, seed)};
    case FixtureKind::Critical: {
      EmbeddingTable table = random_embeddings(lexicon(kCriticalLexiconSize), dim, seed);
      auto tokens = long_memory_tokens(table, n, kCriticalSpectralExponent, kCriticalNoise,
                                       seed ^ 0xc817ULL);
      return {std::move(tokens), std::move(table)};
    }
  }
  throw Error(Errc::InvalidArgument, "unknown fixture kind");
}

}  // namespace textphase::synthetic
