#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <set>

#include "corpus.hpp"
#include "error.hpp"
#include "genclient.hpp"
#include "oracles.hpp"
#include "scratch_dir.hpp"
#include "stub_server.hpp"

using namespace textphase;
namespace fs = std::filesystem;

namespace {

Errc error_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc{};
}

GenerationConfig base_config(const std::string& url, const fs::path& out) {
  GenerationConfig c;
  c.endpoint_url = url;
  c.model = "stub";
  c.prompt = "Call me Ishmael.";
  c.temperatures = {0.7};
  c.seeds = {1};
  c.target_tokens = 300;
  c.max_tokens_per_call = 100;
  c.output_dir = out;
  c.api_key = "test-key";
  c.backoff = std::chrono::milliseconds(1);
  c.timeout = std::chrono::seconds(5);
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("softmax examples") {
  auto half = temperature_softmax(std::vector<double>{0, 0}, 0.3);
  CHECK(half[0] == 0.5);
  CHECK(half[1] == 0.5);
  auto p = temperature_softmax(std::vector<double>{std::log(2.0), 0.0}, 0.5);
  CHECK(std::abs(p[0] - 0.8) < 1e-12);
  CHECK(std::abs(p[1] - 0.2) < 1e-12);
  auto sharp = temperature_softmax(std::vector<double>{3, 0}, 0.01);
  CHECK(sharp[0] > 1 - 1e-10);
  std::vector<double> u{0.3, -1.2, 2.2, 0.0};
  auto one = temperature_softmax(u, 1.0);
  auto ref = oracle::softmax(u, 1.0);
  for (std::size_t i = 0; i < u.size(); ++i)
    CHECK(std::abs(one[i] - static_cast<double>(ref[i])) < 1e-15);
}

TEST_CASE("softmax properties") {
  std::mt19937_64 g(31);
  std::normal_distribution<double> n(0, 4);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> u(1 + g() % 50);
    // Logits on a 2^-10 grid so that u + c is exactly representable.
    for (auto& x : u) x = std::round(n(g) * 1024) / 1024;
    const double c = static_cast<double>(static_cast<long>(g() % 20001) - 10000) / 1024;
    std::vector<double> shifted(u);
    for (auto& x : shifted) x += c;
    const auto argmax = std::max_element(u.begin(), u.end()) - u.begin();
    for (double t : {0.1, 0.7, 1.0, 2.8}) {
      auto p = temperature_softmax(u, t);
      double sum = 0;
      for (double x : p) {
        CHECK(x >= 0.0);
        CHECK(x <= 1.0);
        sum += x;
      }
      CHECK(std::abs(sum - 1.0) < 1e-12);
      CHECK(p == temperature_softmax(shifted, t));
      CHECK(std::max_element(p.begin(), p.end()) - p.begin() == argmax);
      auto ref = oracle::softmax(u, t);
      for (std::size_t i = 0; i < u.size(); ++i)
        CHECK(std::abs(p[i] - static_cast<double>(ref[i])) < 1e-13);
    }
  }
}

TEST_CASE("softmax errors") {
  std::vector<double> u{1, 2};
  CHECK(error_of([&] { temperature_softmax(u, 0.0); }) == Errc::NonPositiveTemperature);
  CHECK(error_of([&] { temperature_softmax(u, -1.0); }) == Errc::NonPositiveTemperature);
  CHECK(error_of([&] { temperature_softmax(u, NAN); }) == Errc::NonFinite);
  std::vector<double> bad{1, INFINITY};
  CHECK(error_of([&] { temperature_softmax(bad, 1.0); }) == Errc::NonFinite);
  CHECK(error_of([&] { temperature_softmax(std::vector<double>{}, 1.0); }) == Errc::EmptyInput);
}

TEST_CASE("defaults") {
  auto t = default_temperature_grid();
  REQUIRE(t.size() == 9);
  CHECK(t.front() == 0.1);
  CHECK(t.back() == 2.5);
  CHECK(format_temperature(t[2]) == "0.7");
  CHECK(default_seeds().size() == 10);
  CHECK(std::string(kDefaultPrompt).find("Call me Ishmael") != std::string::npos);
  GenerationConfig c;
  CHECK(c.target_tokens == 10000);
  CHECK(c.temperatures == t);
}

TEST_CASE("single run writes one file and one entry") {
  stub::CompletionServer server([](const auto&, int) { return stub::Reply{200, " whale", 100}; });
  test::ScratchDir dir("gen1");
  auto m = generate_corpus(base_config(server.url(), dir.path()));
  REQUIRE(m.entries.size() == 1);
  const auto& e = m.entries[0];
  CHECK(e.path.filename() == "stub_t0.7_s1.txt");
  CHECK(slurp(e.path) == " whale whale whale");
  CHECK(*e.model_tokens == 300);
  CHECK(*e.word_count == 3);
  CHECK_FALSE(e.truncated);
  CHECK(e.calls == 3);
  CHECK(server.calls() == 3);
  CHECK(fs::exists(dir.path() / kManifestFileName));
  CHECK_FALSE(fs::exists(dir.path() / "stub_t0.7_s1.txt.part"));

  auto reqs = server.requests();
  CHECK(reqs[0]["model"] == "stub");
  CHECK(reqs[0]["temperature"] == 0.7);
  CHECK(reqs[0]["seed"] == 1);
  CHECK(reqs[0]["top_p"] == 1);
  CHECK(reqs[0]["max_tokens"] == 100);
  CHECK_FALSE(reqs[0].contains("top_k"));
  CHECK(reqs[0]["prompt"] == "Call me Ishmael.");
  CHECK(reqs[1]["prompt"] == "Call me Ishmael. whale");
  for (const auto& h : server.auth_headers()) CHECK(h == "Bearer test-key");
}

TEST_CASE("exact call count") {
  stub::CompletionServer server([](const auto&, int) { return stub::Reply{200, " w", 100}; });
  test::ScratchDir dir("gen100");
  auto c = base_config(server.url(), dir.path());
  c.target_tokens = 10000;
  c.max_tokens_per_call = 100;
  c.context_chars = 64;
  auto m = generate_corpus(c);
  CHECK(server.calls() == 100);
  CHECK(m.entries[0].calls == 100);
  CHECK(*m.entries[0].model_tokens == 10000);
  for (const auto& r : server.requests())
    CHECK(r["prompt"].get<std::string>().size() <= 64);
}

TEST_CASE("last call asks only for the remainder") {
  stub::CompletionServer server([](const nlohmann::json& r, int) {
    return stub::Reply{200, " w", r["max_tokens"].get<long>()};
  });
  test::ScratchDir dir("genrem");
  auto c = base_config(server.url(), dir.path());
  c.target_tokens = 250;
  generate_corpus(c);
  auto reqs = server.requests();
  REQUIRE(reqs.size() == 3);
  CHECK(reqs[2]["max_tokens"] == 50);
}

TEST_CASE("retry then succeed") {
  stub::CompletionServer server([](const auto&, int i) {
    if (i < 2) return stub::Reply{i == 0 ? 503 : 429, "", 0};
    return stub::Reply{200, " sea", 300};
  });
  test::ScratchDir dir("genretry");
  std::vector<std::string> logs;
  auto c = base_config(server.url(), dir.path());
  c.log = [&](const std::string& s) { logs.push_back(s); };
  auto m = generate_corpus(c);
  CHECK(server.calls() == 3);
  CHECK(m.entries[0].retries == 2);
  CHECK(m.entries[0].calls == 3);
  CHECK(slurp(m.entries[0].path) == " sea");
  CHECK(std::count_if(logs.begin(), logs.end(),
                      [](auto& s) { return s.rfind("retry", 0) == 0; }) == 2);
}

TEST_CASE("server and auth failures") {
  test::ScratchDir dir("genfail");
  SUBCASE("persistent 500") {
    stub::CompletionServer server([](const auto&, int) { return stub::Reply{500, "", 0}; });
    auto c = base_config(server.url(), dir.path());
    CHECK(error_of([&] { generate_corpus(c); }) == Errc::ServerError);
    CHECK(server.calls() == 3);
    CHECK_FALSE(fs::exists(dir.path() / "stub_t0.7_s1.txt"));
  }
  SUBCASE("401 is not retried") {
    stub::CompletionServer server([](const auto&, int) { return stub::Reply{401, "", 0}; });
    auto c = base_config(server.url(), dir.path());
    CHECK(error_of([&] { generate_corpus(c); }) == Errc::AuthMissing);
    CHECK(server.calls() == 1);
  }
  SUBCASE("missing key") {
    stub::CompletionServer server([](const auto&, int) { return stub::Reply{200, " x", 300}; });
    auto c = base_config(server.url(), dir.path());
    c.api_key.clear();
    CHECK(error_of([&] { generate_corpus(c); }) == Errc::AuthMissing);
    CHECK(server.calls() == 0);
    c.require_auth = false;
    CHECK_NOTHROW(generate_corpus(c));
    CHECK(server.auth_headers().at(0).empty());
  }
  SUBCASE("unreachable endpoint") {
    std::string url;
    {
      stub::CompletionServer gone([](const auto&, int) { return stub::Reply{}; });
      url = gone.url();
    }
    auto c = base_config(url, dir.path());
    CHECK(error_of([&] { generate_corpus(c); }) == Errc::EndpointUnreachable);
  }
  SUBCASE("invalid config") {
    auto c = base_config("http://127.0.0.1:1", dir.path());
    c.temperatures = {0.0};
    CHECK(error_of([&] { generate_corpus(c); }) == Errc::InvalidArgument);
    c = base_config("127.0.0.1:1", dir.path());
    CHECK(error_of([&] { generate_corpus(c); }) == Errc::InvalidArgument);
  }
}

TEST_CASE("empty responses truncate the run") {
  stub::CompletionServer server([](const auto&, int i) {
    if (i == 0) return stub::Reply{200, " start", 40};
    return stub::Reply{200, "", 0};
  });
  test::ScratchDir dir("genempty");
  auto m = generate_corpus(base_config(server.url(), dir.path()));
  CHECK(server.calls() == 4);
  CHECK(m.entries[0].truncated);
  CHECK(*m.entries[0].model_tokens == 40);
  CHECK(slurp(m.entries[0].path) == " start");
}

TEST_CASE("word count stands in for missing usage") {
  stub::CompletionServer server([](const auto&, int) { return stub::Reply{200, " a b c d e", -1}; });
  test::ScratchDir dir("genusage");
  auto c = base_config(server.url(), dir.path());
  c.target_tokens = 12;
  auto m = generate_corpus(c);
  CHECK(server.calls() == 3);
  CHECK(*m.entries[0].model_tokens == 15);
}

TEST_CASE("resume is idempotent") {
  std::atomic<int> served{0};
  stub::CompletionServer server([&](const auto&, int) {
    ++served;
    return stub::Reply{200, " ok", 100};
  });
  test::ScratchDir dir("genresume");
  auto c = base_config(server.url(), dir.path());
  c.temperatures = {0.4, 1.0};
  c.seeds = {1, 2};
  auto first = generate_corpus(c);
  CHECK(first.entries.size() == 4);
  CHECK(server.calls() == 12);

  auto second = generate_corpus(c);
  CHECK(server.calls() == 12);
  REQUIRE(second.entries.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(second.entries[i].path == first.entries[i].path);
    CHECK(second.entries[i].calls == first.entries[i].calls);
  }

  // A deleted file is regenerated, the others are not touched.
  fs::remove(first.entries[1].path);
  generate_corpus(c);
  CHECK(server.calls() == 15);

  // Extending the grid only runs the new pairs.
  c.seeds = {1, 2, 3};
  auto third = generate_corpus(c);
  CHECK(server.calls() == 21);
  CHECK(third.entries.size() == 6);
}

TEST_CASE("truncated entries are retried on resume") {
  std::atomic<bool> healthy{false};
  stub::CompletionServer server([&](const auto&, int) {
    return healthy ? stub::Reply{200, " ok", 300} : stub::Reply{200, "", 0};
  });
  test::ScratchDir dir("gentrunc");
  auto c = base_config(server.url(), dir.path());
  CHECK(generate_corpus(c).entries[0].truncated);
  const auto before = server.calls();
  healthy = true;
  auto m = generate_corpus(c);
  CHECK_FALSE(m.entries[0].truncated);
  CHECK(server.calls() == before + 1);
}

TEST_CASE("concurrent runs") {
  stub::CompletionServer server([](const auto&, int) { return stub::Reply{200, " z", 50}; });
  test::ScratchDir dir("genpar");
  auto c = base_config(server.url(), dir.path());
  c.temperatures = {0.1, 0.4, 0.7};
  c.seeds = {1, 2, 3};
  c.max_in_flight = 4;
  auto m = generate_corpus(c);
  CHECK(m.entries.size() == 9);
  CHECK(server.calls() == 9 * 6);
  std::set<std::pair<double, long>> seen;
  for (auto& e : m.entries) {
    seen.insert({e.temperature, e.seed});
    CHECK(slurp(e.path) == " z z z z z z");
  }
  CHECK(seen.size() == 9);
  auto scanned = scan_corpus(dir.path());
  CHECK(scanned.entries.size() == 9);
}

TEST_CASE("manifest round trip") {
  test::ScratchDir dir("manifest");
  CorpusManifest m;
  m.root = dir.path();
  ManifestEntry e;
  e.path = dir.path() / "q_t0.7_s3.txt";
  e.model = "q";
  e.temperature = 0.7;
  e.seed = 3;
  e.model_tokens = 10004;
  e.word_count = 7702;
  e.truncated = true;
  e.calls = 21;
  e.retries = 2;
  m.entries.push_back(e);
  ManifestEntry bare;
  bare.path = dir.path() / "q_t1.0_s1.txt";
  bare.model = "q";
  bare.temperature = 1.0;
  bare.seed = 1;
  m.entries.push_back(bare);
  write_manifest(m, dir.path() / kManifestFileName);
  auto r = read_manifest(dir.path() / kManifestFileName);
  REQUIRE(r.entries.size() == 2);
  CHECK(r.entries[0].path == e.path);
  CHECK(r.entries[0].temperature == 0.7);
  CHECK(*r.entries[0].model_tokens == 10004);
  CHECK(*r.entries[0].word_count == 7702);
  CHECK(r.entries[0].truncated);
  CHECK(r.entries[0].calls == 21);
  CHECK(r.entries[0].retries == 2);
  CHECK_FALSE(r.entries[1].model_tokens);
  CHECK(error_of([&] { read_manifest(dir.path() / "missing.json"); }) == Errc::Io);
  std::ofstream(dir.path() / "bad.json") << "{not json";
  CHECK(error_of([&] { read_manifest(dir.path() / "bad.json"); }) == Errc::Io);
}
