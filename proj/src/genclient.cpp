#include "genclient.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <tuple>

#ifdef TEXTPHASE_WITH_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>
#include <json.hpp>

#include "error.hpp"

namespace textphase {

std::vector<double> temperature_softmax(std::span<const double> logits, double temperature) {
  if (logits.empty()) throw Error(Errc::EmptyInput, "softmax of an empty vector");
  if (!std::isfinite(temperature)) throw Error(Errc::NonFinite, "temperature is not finite");
  if (!(temperature > 0.0))
    throw Error(Errc::NonPositiveTemperature, "temperature must be positive");
  for (double u : logits)
    if (!std::isfinite(u)) throw Error(Errc::NonFinite, "logit is not finite");

  const double peak = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp((logits[i] - peak) / temperature);
    total += p[i];
  }
  for (double& x : p) x /= total;
  return p;
}

const char* const kDefaultPrompt =
    "CHAPTER 1. Loomings.\n\n"
    "Call me Ishmael. Some years ago—never mind how long precisely—having little or no "
    "money in my purse, and nothing particular to interest me on shore, I thought I would sail "
    "about a little and see the watery part of the world. It is a way I have of driving off the "
    "spleen and regulating the circulation. Whenever I find myself growing grim about the mouth; "
    "whenever it is a damp, drizzly November in my soul; whenever I find myself involuntarily "
    "pausing before coffin warehouses, and bringing up the rear of every funeral I meet; and "
    "especially whenever my hypos get such an upper hand of me, that it requires a strong moral "
    "principle to prevent me from deliberately stepping into the street, and methodically "
    "knocking people’s hats off—then, I account it high time to get to sea as soon as I "
    "can. This is my substitute for pistol and ball. With a philosophical flourish Cato throws "
    "himself upon his sword; I quietly take to the ship. There is nothing surprising in this. If "
    "they but knew it, almost all men in their degree, some time or other, cherish very nearly "
    "the same feelings towards the ocean with me.\n\n";

std::vector<double> default_temperature_grid() {
  std::vector<double> out;
  for (int k = 0; k <= 8; ++k) out.push_back(static_cast<double>(1 + 3 * k) / 10.0);
  return out;
}

std::vector<long> default_seeds() {
  std::vector<long> out;
  for (long s = 1; s <= 10; ++s) out.push_back(s);
  return out;
}

void GenerationConfig::validate() const {
  if (endpoint_url.empty()) throw Error(Errc::InvalidArgument, "endpoint URL is required");
  if (model.empty()) throw Error(Errc::InvalidArgument, "model name is required");
  if (temperatures.empty() || seeds.empty())
    throw Error(Errc::InvalidArgument, "temperature and seed lists must be non-empty");
  for (double t : temperatures)
    if (!(t > 0.0) || !std::isfinite(t))
      throw Error(Errc::InvalidArgument, "temperatures must be finite and > 0");
  if (target_tokens < 1) throw Error(Errc::InvalidArgument, "target_tokens must be >= 1");
  if (max_tokens_per_call < 1)
    throw Error(Errc::InvalidArgument, "max_tokens_per_call must be >= 1");
  if (max_attempts < 1) throw Error(Errc::InvalidArgument, "max_attempts must be >= 1");
}

namespace {

using nlohmann::json;

struct Endpoint {
  std::string origin;     // scheme://host[:port]
  std::string base_path;  // "" or "/prefix"
};

Endpoint split_endpoint(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw Error(Errc::InvalidArgument, "endpoint URL needs a scheme: " + url);
  auto path_start = url.find('/', scheme_end + 3);
  Endpoint e;
  e.origin = url.substr(0, path_start);
  if (path_start != std::string::npos) e.base_path = url.substr(path_start);
  while (!e.base_path.empty() && e.base_path.back() == '/') e.base_path.pop_back();
  return e;
}

// Keeps the last max_chars bytes without splitting a UTF-8 sequence.
std::string tail(const std::string& s, std::size_t max_chars) {
  if (max_chars == 0 || s.size() <= max_chars) return s;
  std::size_t start = s.size() - max_chars;
  while (start < s.size() && (static_cast<unsigned char>(s[start]) & 0xC0) == 0x80) ++start;
  return s.substr(start);
}

struct Completion {
  std::string text;
  long tokens = 0;
};

struct RunStats {
  long calls = 0;
  long retries = 0;
};

class CompletionClient {
 public:
  explicit CompletionClient(const GenerationConfig& cfg)
      : cfg_(cfg), endpoint_(split_endpoint(cfg.endpoint_url)), client_(endpoint_.origin) {
    client_.set_connection_timeout(10);
    client_.set_read_timeout(static_cast<time_t>(cfg.timeout.count()));
    client_.set_write_timeout(30);
    if (!cfg.api_key.empty()) client_.set_bearer_token_auth(cfg.api_key);
  }

  Completion complete(const std::string& prompt, double temperature, long seed, long max_tokens,
                      RunStats& stats, const std::string& what) {
    json body = {{"model", cfg_.model},   {"prompt", prompt},
                 {"temperature", temperature}, {"seed", seed},
                 {"max_tokens", max_tokens}, {"top_p", 1}};
    const std::string payload = body.dump();
    const std::string path = endpoint_.base_path + "/v1/completions";

    std::string last_error;
    bool last_was_connection = false;
    for (int attempt = 1; attempt <= cfg_.max_attempts; ++attempt) {
      if (attempt > 1) {
        ++stats.retries;
        if (cfg_.log)
          cfg_.log("retry " + std::to_string(attempt - 1) + "/" +
                   std::to_string(cfg_.max_attempts - 1) + " for " + what + ": " + last_error);
        std::this_thread::sleep_for(cfg_.backoff * (1 << (attempt - 2)));
      }
      ++stats.calls;
      auto res = client_.Post(path, payload, "application/json");
      if (!res) {
        last_was_connection = true;
        last_error = "connection failed (" + httplib::to_string(res.error()) + ")";
        continue;
      }
      last_was_connection = false;
      if (res->status == 401 || res->status == 403)
        throw Error(Errc::AuthMissing, "endpoint rejected credentials (HTTP " +
                                           std::to_string(res->status) + ")");
      if (res->status >= 500 || res->status == 429) {
        last_error = "HTTP " + std::to_string(res->status);
        continue;
      }
      if (res->status != 200)
        throw Error(Errc::ServerError, "HTTP " + std::to_string(res->status) + ": " + res->body);
      return parse(res->body);
    }
    if (last_was_connection)
      throw Error(Errc::EndpointUnreachable, endpoint_.origin + ": " + last_error);
    throw Error(Errc::ServerError, "giving up after " + std::to_string(cfg_.max_attempts) +
                                       " attempts: " + last_error);
  }

 private:
  static Completion parse(const std::string& body) {
    try {
      json j = json::parse(body);
      Completion c;
      const auto& choices = j.at("choices");
      if (!choices.empty()) c.text = choices.at(0).value("text", std::string{});
      if (j.contains("usage") && j["usage"].contains("completion_tokens"))
        c.tokens = j["usage"]["completion_tokens"].get<long>();
      else
        c.tokens = static_cast<long>(tokenize(c.text).size());
      return c;
    } catch (const json::exception& e) {
      throw Error(Errc::ServerError, std::string("malformed completion response: ") + e.what());
    }
  }

  const GenerationConfig& cfg_;
  Endpoint endpoint_;
  httplib::Client client_;
};

constexpr int kMaxEmptyResponses = 3;

ManifestEntry run_one(const GenerationConfig& cfg, double temperature, long seed) {
  ManifestEntry entry;
  entry.model = cfg.model;
  entry.temperature = temperature;
  entry.seed = seed;
  entry.path = cfg.output_dir / corpus_file_name(cfg.model, temperature, seed);

  const std::string what = cfg.model + " t=" + format_temperature(temperature) +
                           " s=" + std::to_string(seed);
  CompletionClient client(cfg);
  RunStats stats;
  std::string generated;
  long tokens = 0;
  int empty_in_a_row = 0;
  while (tokens < cfg.target_tokens) {
    const long ask = std::min(cfg.max_tokens_per_call, cfg.target_tokens - tokens);
    Completion c = client.complete(tail(cfg.prompt + generated, cfg.context_chars), temperature,
                                   seed, ask, stats, what);
    if (c.tokens <= 0 || c.text.empty()) {
      if (++empty_in_a_row >= kMaxEmptyResponses) break;
      continue;
    }
    empty_in_a_row = 0;
    generated += c.text;
    tokens += c.tokens;
  }

  entry.model_tokens = tokens;
  entry.word_count = static_cast<long>(tokenize(generated).size());
  entry.truncated = tokens < cfg.target_tokens;
  entry.calls = stats.calls;
  entry.retries = stats.retries;
  if (entry.truncated && cfg.log)
    cfg.log("truncated run for " + what + ": " + std::to_string(tokens) + " of " +
            std::to_string(cfg.target_tokens) + " tokens");

  auto part = entry.path;
  part += ".part";
  {
    std::ofstream out(part, std::ios::binary);
    if (!out) throw Error(Errc::Io, "cannot write " + part.string());
    out << generated;
  }
  std::filesystem::rename(part, entry.path);
  return entry;
}

}  // namespace

void write_manifest(const CorpusManifest& manifest, const std::filesystem::path& path) {
  json entries = json::array();
  for (const auto& e : manifest.entries) {
    json j = {{"path", e.path.filename().string()}, {"model", e.model},
              {"temperature", e.temperature},     {"seed", e.seed},
              {"truncated", e.truncated},         {"calls", e.calls},
              {"retries", e.retries}};
    j["model_tokens"] = e.model_tokens ? json(*e.model_tokens) : json(nullptr);
    j["word_count"] = e.word_count ? json(*e.word_count) : json(nullptr);
    entries.push_back(std::move(j));
  }
  auto tmp = path;
  tmp += ".part";
  {
    std::ofstream out(tmp);
    if (!out) throw Error(Errc::Io, "cannot write " + tmp.string());
    out << json{{"entries", entries}}.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

CorpusManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open manifest: " + path.string());
  CorpusManifest m;
  m.root = path.parent_path();
  try {
    json j = json::parse(in);
    for (const auto& e : j.at("entries")) {
      ManifestEntry me;
      me.path = m.root / e.at("path").get<std::string>();
      me.model = e.at("model").get<std::string>();
      me.temperature = e.at("temperature").get<double>();
      me.seed = e.at("seed").get<long>();
      me.truncated = e.value("truncated", false);
      me.calls = e.value("calls", 0L);
      me.retries = e.value("retries", 0L);
      if (e.contains("model_tokens") && !e["model_tokens"].is_null())
        me.model_tokens = e["model_tokens"].get<long>();
      if (e.contains("word_count") && !e["word_count"].is_null())
        me.word_count = e["word_count"].get<long>();
      m.entries.push_back(std::move(me));
    }
  } catch (const json::exception& e) {
    throw Error(Errc::Io, "malformed manifest " + path.string() + ": " + e.what());
  }
  return m;
}

CorpusManifest generate_corpus(const GenerationConfig& config) {
  config.validate();
  if (config.require_auth && config.api_key.empty())
    throw Error(Errc::AuthMissing, "no API key (set TEXTPHASE_API_KEY)");
  std::filesystem::create_directories(config.output_dir);

  const auto manifest_path = config.output_dir / kManifestFileName;
  std::map<std::tuple<std::string, double, long>, ManifestEntry> previous;
  if (std::filesystem::exists(manifest_path))
    for (auto& e : read_manifest(manifest_path).entries)
      previous.emplace(std::make_tuple(e.model, e.temperature, e.seed), e);

  struct Job {
    double temperature;
    long seed;
  };
  std::vector<Job> jobs;
  for (double t : config.temperatures)
    for (long s : config.seeds) jobs.push_back({t, s});

  std::vector<std::optional<ManifestEntry>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::optional<Error> first_error;

  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      {
        std::lock_guard lock(error_mutex);
        if (first_error) return;
      }
      const Job& job = jobs[i];
      auto it = previous.find(std::make_tuple(config.model, job.temperature, job.seed));
      if (it != previous.end() && !it->second.truncated && std::filesystem::exists(it->second.path)) {
        results[i] = it->second;
        continue;
      }
      try {
        results[i] = run_one(config, job.temperature, job.seed);
      } catch (const Error& e) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = e;
      }
    }
  };
  {
    const unsigned n = std::clamp<unsigned>(config.max_in_flight, 1,
                                            static_cast<unsigned>(jobs.size()));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
  }

  // Entries for other (model, T, seed) triples from earlier runs are kept.
  for (std::size_t i = 0; i < jobs.size(); ++i)
    if (results[i])
      previous.insert_or_assign(std::make_tuple(results[i]->model, results[i]->temperature,
                                                results[i]->seed),
                                *results[i]);
  CorpusManifest manifest;
  manifest.root = config.output_dir;
  for (auto& [key, e] : previous) manifest.entries.push_back(e);
  write_manifest(manifest, manifest_path);

  if (first_error) throw *first_error;
  return manifest;
}

}  // namespace textphase
