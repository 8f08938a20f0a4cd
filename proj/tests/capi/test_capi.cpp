#include <doctest.h>

#include <textphase/textphase.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "scratch_dir.hpp"

namespace fs = std::filesystem;

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  tp_string_free(s);
  return out;
}

struct Synthetic {
  std::string text;
  tp_embeddings* table = nullptr;
  Synthetic(const char* kind, size_t n, size_t dim, uint64_t seed) {
    char* t = nullptr;
    REQUIRE(tp_synthetic_text(kind, n, dim, seed, &t, &table) == TP_OK);
    text = take(t);
  }
  ~Synthetic() { tp_embeddings_free(table); }
  tp_sequence* sequence() const {
    tp_sequence* s = nullptr;
    REQUIRE(tp_sequence_from_text(table, text.data(), text.size(), "fixture", &s) == TP_OK);
    return s;
  }
};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(tp_version()) > 0);
  CHECK(std::string(tp_status_name(TP_OK)) == "Ok");
  CHECK(std::string(tp_status_name(TP_ERR_DIM_MISMATCH)) == "DimMismatch");
  CHECK(std::string(tp_status_name(TP_ERR_INTERNAL)) == "Internal");
  CHECK(std::string(tp_phase_name(TP_PHASE_CRITICAL)) == "critical");
}

TEST_CASE("null arguments are rejected, not dereferenced") {
  CHECK(tp_embeddings_load(nullptr, 0, nullptr) == TP_ERR_INVALID_ARGUMENT);
  tp_sequence* s = nullptr;
  CHECK(tp_sequence_from_vectors(nullptr, 4, 2, &s) == TP_ERR_INVALID_ARGUMENT);
  CHECK(s == nullptr);
  CHECK(tp_acf(nullptr, "1:4", 0, TP_ACF_FFT, nullptr) == TP_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(tp_last_error()) > 0);
  CHECK(tp_curve_size(nullptr) == 0);
  CHECK(tp_spectrum_metric(nullptr) == 0.0);
  CHECK(tp_fit_gapelmaper(nullptr, nullptr) == 0);
  tp_curve_free(nullptr);
  tp_analysis_free(nullptr);
}

TEST_CASE("embedding files through the C API") {
  test::ScratchDir dir("capi_emb");
  tp_embeddings* e = nullptr;
  const auto missing = (dir.path() / "absent.txt").string();
  CHECK(tp_embeddings_load(missing.c_str(), 0, &e) == TP_ERR_IO);
  CHECK(std::string(tp_last_error()).find("absent.txt") != std::string::npos);

  const char* words[] = {"the", "whale", "ship"};
  REQUIRE(tp_embeddings_random(words, 3, 4, 9, &e) == TP_OK);
  CHECK(std::string(tp_last_error()).empty());
  CHECK(tp_embeddings_dim(e) == 4);
  const auto path = (dir.path() / "e.txt").string();
  REQUIRE(tp_embeddings_save(e, path.c_str()) == TP_OK);
  tp_embeddings_free(e);

  tp_embeddings* back = nullptr;
  REQUIRE(tp_embeddings_load(path.c_str(), 4, &back) == TP_OK);
  CHECK(tp_embeddings_word_count(back) == 3);
  CHECK(tp_embeddings_duplicates(back) == 0);
  tp_embeddings_free(back);
  CHECK(tp_embeddings_load(path.c_str(), 5, &back) == TP_ERR_DIM_MISMATCH);

  std::ofstream(dir.path() / "bad.txt") << "the 0.1 0.2\nwhale 0.1 zz\n";
  CHECK(tp_embeddings_load((dir.path() / "bad.txt").string().c_str(), 0, &back) ==
        TP_ERR_MALFORMED_LINE);
}

TEST_CASE("tokenize and sequences") {
  char* toks = nullptr;
  size_t n = 0;
  const std::string text = "The whale, the SHIP!";
  REQUIRE(tp_tokenize(text.data(), text.size(), &toks, &n) == TP_OK);
  CHECK(n == 4);
  CHECK(take(toks) == "the\nwhale\nthe\nship\n");

  const char* words[] = {"the", "whale"};
  tp_embeddings* e = nullptr;
  REQUIRE(tp_embeddings_random(words, 2, 3, 1, &e) == TP_OK);
  tp_sequence* s = nullptr;
  REQUIRE(tp_sequence_from_text(e, text.data(), text.size(), "t", &s) == TP_OK);
  CHECK(tp_sequence_length(s) == 4);
  CHECK(tp_sequence_dim(s) == 3);
  CHECK(tp_sequence_oov_count(s) == 1);
  tp_sequence_free(s);
  const std::string oov = "kraken leviathan";
  CHECK(tp_sequence_from_text(e, oov.data(), oov.size(), "t", &s) == TP_ERR_ALL_TOKENS_OOV);
  CHECK(tp_sequence_from_text(e, "", 0, "t", &s) == TP_ERR_EMPTY_INPUT);
  tp_embeddings_free(e);
}

TEST_CASE("acf, spectrum and fit handles") {
  std::mt19937_64 g(4);
  std::normal_distribution<double> nd;
  const size_t n = 600, dim = 6;
  std::vector<double> data(n * dim);
  for (auto& x : data) x = nd(g);
  tp_sequence* s = nullptr;
  REQUIRE(tp_sequence_from_vectors(data.data(), n, dim, &s) == TP_OK);

  tp_curve *fft = nullptr, *direct = nullptr;
  REQUIRE(tp_acf(s, "1:100", 0, TP_ACF_FFT, &fft) == TP_OK);
  REQUIRE(tp_acf(s, "1:100", 0, TP_ACF_DIRECT, &direct) == TP_OK);
  REQUIRE(tp_curve_size(fft) == 100);
  CHECK(tp_curve_n(fft) == n);
  for (size_t i = 0; i < 100; ++i) {
    size_t la = 0, lb = 0, pc = 0;
    double va = 0, vb = 0;
    tp_curve_point(fft, i, &la, &va, &pc);
    tp_curve_point(direct, i, &lb, &vb, nullptr);
    CHECK(la == lb);
    CHECK(pc == n - la);
    CHECK(std::abs(va - vb) < 1e-9);
  }
  CHECK(tp_curve_point(fft, 100, nullptr, nullptr, nullptr) == TP_ERR_INVALID_ARGUMENT);

  tp_curve* too_long = nullptr;
  CHECK(tp_acf(s, "1:400", 0, TP_ACF_FFT, &too_long) == TP_ERR_SEQUENCE_TOO_SHORT);
  REQUIRE(tp_acf(s, "1:400", 1, TP_ACF_FFT, &too_long) == TP_OK);
  CHECK(tp_curve_size(too_long) == 300);
  tp_curve_free(too_long);
  CHECK(tp_acf(s, "bogus", 0, TP_ACF_FFT, &too_long) == TP_ERR_INVALID_ARGUMENT);

  // CSV round trip.
  const std::string csv = take(tp_curve_csv(fft));
  tp_curve* parsed = nullptr;
  REQUIRE(tp_curve_from_csv(csv.data(), csv.size(), &parsed) == TP_OK);
  CHECK(tp_curve_n(parsed) == n);
  CHECK(take(tp_curve_csv(parsed)) == csv);
  const std::string broken = "lag,value\n1\n";
  tp_curve* bad = nullptr;
  CHECK(tp_curve_from_csv(broken.data(), broken.size(), &bad) == TP_ERR_MALFORMED_LINE);

  tp_spectrum* sp = nullptr;
  REQUIRE(tp_spectrum_compute(parsed, &sp) == TP_OK);
  CHECK(tp_spectrum_bins(sp) == 51);
  CHECK(tp_spectrum_peak_index(sp) >= 1);
  CHECK(tp_spectrum_metric(sp) == tp_spectrum_magnitude(sp, tp_spectrum_peak_index(sp)));
  CHECK(tp_spectrum_implied_period(sp) == 100.0 / tp_spectrum_peak_index(sp));
  CHECK(take(tp_spectrum_json(sp)).find("periodicity_metric") != std::string::npos);

  double temps[] = {0.5, 0.5};
  const tp_spectrum* spectra[] = {sp, sp};
  char* tcsv = nullptr;
  REQUIRE(tp_transition_csv(temps, spectra, 2, &tcsv) == TP_OK);
  CHECK(take(tcsv).rfind("temperature,mean_metric,std_metric,n\n0.5,", 0) == 0);
  tp_spectrum_free(sp);

  // i.i.d. vectors: the ACF straddles zero, so the ratio is undefined.
  tp_fit* f = nullptr;
  REQUIRE(tp_fit_compute(direct, 1, 100, &f) == TP_OK);
  CHECK(tp_fit_status(f) == TP_GAPELMAPER_UNDEFINED_NONPOSITIVE_ACF);
  CHECK(tp_fit_gapelmaper(f, nullptr) == 0);
  tp_fit_free(f);
  CHECK(tp_fit_compute(direct, 0, 100, &f) == TP_ERR_INVALID_ARGUMENT);

  size_t lags[] = {1, 2, 4, 8, 16};
  double vals[5];
  for (int i = 0; i < 5; ++i) vals[i] = 2.0 / std::sqrt(static_cast<double>(lags[i]));
  tp_curve* pl = nullptr;
  REQUIRE(tp_curve_from_points(lags, vals, 5, 1000, &pl) == TP_OK);
  REQUIRE(tp_fit_compute(pl, 1, 16, &f) == TP_OK);
  double a = 0, b = 0, mape = 1;
  REQUIRE(tp_fit_law(f, TP_LAW_POWER, &a, &b, &mape) == 1);
  CHECK(std::abs(a - 2.0) < 1e-9);
  CHECK(std::abs(b - 0.5) < 1e-9);
  double ratio = 0;
  REQUIRE(tp_fit_gapelmaper(f, &ratio) == 1);
  CHECK(ratio < 0.1);
  CHECK(take(tp_fit_json(f)).find("\"ok\"") != std::string::npos);
  tp_fit_free(f);
  tp_curve_free(pl);

  tp_curve_free(parsed);
  tp_curve_free(fft);
  tp_curve_free(direct);
  tp_sequence_free(s);
}

TEST_CASE("config handle") {
  tp_config* c = nullptr;
  REQUIRE(tp_config_create(&c) == TP_OK);
  CHECK(tp_config_required_length(c) == 1200);
  CHECK(tp_config_gapelmaper_threshold(c) == 1.0);
  REQUIRE(tp_config_set(c, "fit_range", "1:1000") == TP_OK);
  CHECK(tp_config_required_length(c) == 2000);
  CHECK(tp_config_set(c, "no_such_key", "1") == TP_ERR_CONFIG);
  CHECK(tp_config_set(c, "periodicity_threshold", "x") == TP_ERR_CONFIG);
  tp_config_free(c);
  CHECK(tp_config_load("/nonexistent/tp.conf", &c) == TP_ERR_IO);
}

TEST_CASE("analysis of a synthetic text") {
  Synthetic fx("critical", 10000, 50, 1);
  tp_sequence* s = fx.sequence();
  tp_analysis* a = nullptr;
  REQUIRE(tp_analyze(s, nullptr, &a) == TP_OK);
  CHECK(tp_analysis_phase(a) == TP_PHASE_CRITICAL);
  CHECK(tp_curve_size(tp_analysis_curve(a, TP_CURVE_PERIODIC)) == 100);
  CHECK(tp_spectrum_metric(tp_analysis_spectrum(a)) == tp_analysis_periodicity_metric(a));
  CHECK(tp_fit_status(tp_analysis_fit(a, 0)) == TP_GAPELMAPER_OK);
  const std::string json = take(tp_analysis_json(a));
  CHECK(json.find("\"critical\"") != std::string::npos);

  test::ScratchDir dir("capi_bundle");
  REQUIRE(tp_analysis_write_bundle(a, dir.path().string().c_str(), 0) == TP_OK);
  CHECK(fs::exists(dir.path() / "phase.json"));
  tp_analysis_free(a);
  tp_sequence_free(s);

  Synthetic shorty("iid", 500, 8, 1);
  s = shorty.sequence();
  CHECK(tp_analyze(s, nullptr, &a) == TP_ERR_SEQUENCE_TOO_SHORT);
  tp_sequence_free(s);

  char* t = nullptr;
  CHECK(tp_synthetic_text("sawtooth", 10, 4, 1, &t, nullptr) == TP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("corpus scan and sweep") {
  test::ScratchDir dir("capi_sweep");
  Synthetic per("periodic", 3000, 16, 1);
  std::ofstream(dir.path() / "m_t0.2_s1.txt") << per.text;
  std::ofstream(dir.path() / "m_t0.2_s2.txt") << per.text;
  std::ofstream(dir.path() / "notes.md") << "skip me";

  tp_manifest* m = nullptr;
  REQUIRE(tp_corpus_scan(dir.path().string().c_str(), &m) == TP_OK);
  CHECK(tp_manifest_size(m) == 2);
  CHECK(tp_manifest_skipped(m) == 1);
  const char* model = nullptr;
  double temp = 0;
  long seed = 0;
  REQUIRE(tp_manifest_entry(m, 1, nullptr, &model, &temp, &seed) == TP_OK);
  CHECK(std::string(model) == "m");
  CHECK(temp == 0.2);
  CHECK(seed == 2);

  tp_sweep* sw = nullptr;
  REQUIRE(tp_sweep_run(m, per.table, nullptr, &sw) == TP_OK);
  CHECK(tp_sweep_rows(sw) == 2);
  CHECK(tp_sweep_errors(sw) == 0);
  const std::string transition = take(tp_sweep_transition_csv(sw));
  CHECK(transition.find("m,0.2,2,") != std::string::npos);
  CHECK(take(tp_sweep_summary_json(sw)).find("periodic") != std::string::npos);
  tp_sweep_free(sw);
  tp_manifest_free(m);

  const auto file = (dir.path() / "notes.md").string();
  CHECK(tp_corpus_scan(file.c_str(), &m) == TP_ERR_NOT_A_DIRECTORY);
}

TEST_CASE("softmax and generation config") {
  const double logits[] = {std::log(2.0), 0.0};
  double p[2];
  REQUIRE(tp_temperature_softmax(logits, 2, 0.5, p) == TP_OK);
  CHECK(std::abs(p[0] - 0.8) < 1e-12);
  CHECK(std::abs(p[1] - 0.2) < 1e-12);
  CHECK(tp_temperature_softmax(logits, 2, 0.0, p) == TP_ERR_NON_POSITIVE_TEMPERATURE);
  CHECK(tp_temperature_softmax(logits, 0, 1.0, p) == TP_ERR_EMPTY_INPUT);

  tp_gen_config* g = nullptr;
  REQUIRE(tp_gen_config_create(&g) == TP_OK);
  CHECK(tp_gen_config_set(g, "temperatures", "0.1:0.7:0.3") == TP_OK);
  CHECK(tp_gen_config_set(g, "seeds", "1:3") == TP_OK);
  CHECK(tp_gen_config_set(g, "target_tokens", "ten") == TP_ERR_INVALID_ARGUMENT);
  CHECK(tp_gen_config_set(g, "colour", "red") == TP_ERR_INVALID_ARGUMENT);
  // No endpoint or model yet.
  CHECK(tp_generate(g, nullptr) != TP_OK);
  tp_gen_config_free(g);
}
