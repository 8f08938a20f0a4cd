#include "textphase/textphase.h"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "acf.hpp"
#include "config.hpp"
#include "corpus.hpp"
#include "embeddings.hpp"
#include "error.hpp"
#include "genclient.hpp"
#include "lawfit.hpp"
#include "phase.hpp"
#include "report.hpp"
#include "spectrum.hpp"
#include "synthetic.hpp"

using namespace textphase;

struct tp_embeddings {
  EmbeddingTable table;
};
struct tp_sequence {
  VectorSequence seq;
  std::string source_id;
  std::size_t word_count;
};
struct tp_curve {
  AcfCurve curve;
};
struct tp_spectrum {
  SpectrumResult result;
};
struct tp_fit {
  GapelmaperResult result;
};
struct tp_config {
  AnalysisConfig config;
};
struct tp_analysis {
  PhaseAnalysis analysis;
  AnalysisConfig config;
  TextInfo info;
  tp_curve periodic, fit, long_range;
  tp_spectrum spectrum;
  tp_fit fit_result, long_fit;
};
struct tp_manifest {
  CorpusManifest manifest;
  std::vector<std::string> paths;
};
struct tp_sweep {
  SweepReport report;
  AnalysisConfig config;
  std::size_t dim;
};
struct tp_gen_config {
  GenerationConfig config;
};

namespace {

thread_local std::string last_error;

tp_status fail(tp_status code, const std::string& message) {
  last_error = message;
  return code;
}

template <class F>
tp_status try_(F&& f) {
  try {
    f();
    last_error.clear();
    return TP_OK;
  } catch (const Error& e) {
    return fail(static_cast<tp_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(TP_ERR_INTERNAL, "out of memory");
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(TP_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(TP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TP_ERR_INTERNAL, "unknown error");
  }
}

template <class T>
T& deref(T* p) {
  if (p == nullptr) throw Error(Errc::InvalidArgument, "null pointer argument");
  return *p;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

tp_manifest* wrap(CorpusManifest m) {
  auto* out = new tp_manifest{std::move(m), {}};
  for (const auto& e : out->manifest.entries) out->paths.push_back(e.path.string());
  return out;
}

std::string_view str(const char* s) {
  if (!s) throw Error(Errc::InvalidArgument, "null string argument");
  return s;
}

long parse_long(std::string_view key, std::string_view v) {
  long out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size())
    throw Error(Errc::InvalidArgument, "invalid integer for " + std::string(key));
  return out;
}

double parse_real(std::string_view key, std::string_view v) {
  double out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size())
    throw Error(Errc::InvalidArgument, "invalid number for " + std::string(key));
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    auto p = s.find(sep);
    out.push_back(s.substr(0, p));
    if (p == std::string_view::npos) break;
    s.remove_prefix(p + 1);
  }
  return out;
}

}  // namespace

extern "C" {

const char* tp_version(void) { return kVersion; }

const char* tp_status_name(tp_status status) {
  if (status == TP_OK) return "Ok";
  if (status == TP_ERR_INTERNAL) return "Internal";
  return errc_name(static_cast<Errc>(status));
}

const char* tp_last_error(void) { return last_error.c_str(); }

void tp_string_free(char* s) { std::free(s); }

/* embeddings */

tp_status tp_embeddings_load(const char* path, size_t expected_dim, tp_embeddings** out) {
  return try_([&] {
    std::optional<std::size_t> dim;
    if (expected_dim) dim = expected_dim;
    deref(out) = new tp_embeddings{load_embeddings_file(std::string(str(path)), dim)};
  });
}

tp_status tp_embeddings_random(const char* const* words, size_t count, size_t dim, uint64_t seed,
                               tp_embeddings** out) {
  return try_([&] {
    std::vector<std::string> w;
    for (size_t i = 0; i < count; ++i) w.emplace_back(str(deref(words + i)));
    deref(out) = new tp_embeddings{synthetic::random_embeddings(w, dim, seed)};
  });
}

size_t tp_embeddings_dim(const tp_embeddings* e) { return e ? e->table.dim() : 0; }
size_t tp_embeddings_word_count(const tp_embeddings* e) { return e ? e->table.word_count() : 0; }
size_t tp_embeddings_duplicates(const tp_embeddings* e) { return e ? e->table.duplicates() : 0; }

tp_status tp_embeddings_save(const tp_embeddings* e, const char* path) {
  return try_([&] {
    std::ofstream f{std::string(str(path))};
    if (!f) throw Error(Errc::Io, "cannot write " + std::string(path));
    save_embeddings(deref(e).table, f);
  });
}

void tp_embeddings_free(tp_embeddings* e) { delete e; }

/* text and sequences */

tp_status tp_tokenize(const char* text, size_t len, char** out_tokens, size_t* out_count) {
  return try_([&] {
    auto tokens = tokenize(std::string_view(len ? text : "", len));
    std::string joined;
    for (const auto& t : tokens) {
      joined += t;
      joined += '\n';
    }
    if (out_count) *out_count = tokens.size();
    deref(out_tokens) = dup(joined);
  });
}

tp_status tp_sequence_from_text(const tp_embeddings* e, const char* text, size_t len,
                                const char* source_id, tp_sequence** out) {
  return try_([&] {
    auto tokens = tokenize(std::string_view(len ? text : "", len));
    auto seq = embed_and_center(tokens, deref(e).table);
    deref(out) = new tp_sequence{std::move(seq), source_id ? source_id : "", tokens.size()};
  });
}

tp_status tp_sequence_from_vectors(const double* data, size_t n, size_t dim, tp_sequence** out) {
  return try_([&] {
    if (n == 0) throw Error(Errc::EmptyInput, "empty vector sequence");
    if (!data) throw Error(Errc::InvalidArgument, "null vector data");
    std::vector<double> v(data, data + n * dim);
    for (double x : v)
      if (!std::isfinite(x)) throw Error(Errc::NonFinite, "vector component is not finite");
    deref(out) = new tp_sequence{VectorSequence::raw(dim, std::move(v)), "", n};
  });
}

size_t tp_sequence_length(const tp_sequence* s) { return s ? s->seq.len() : 0; }
size_t tp_sequence_dim(const tp_sequence* s) { return s ? s->seq.dim() : 0; }
size_t tp_sequence_oov_count(const tp_sequence* s) { return s ? s->seq.oov_count() : 0; }
void tp_sequence_free(tp_sequence* s) { delete s; }

tp_status tp_synthetic_text(const char* kind, size_t n_words, size_t dim, uint64_t seed,
                            char** out_text, tp_embeddings** out_table) {
  return try_([&] {
    if (n_words == 0) throw Error(Errc::EmptyInput, "synthetic text needs n_words > 0");
    auto fixture = synthetic::make_fixture(synthetic::parse_fixture_kind(str(kind)), n_words,
                                           dim, seed);
    std::string text;
    for (std::size_t i = 0; i < fixture.tokens.size(); ++i) {
      text += fixture.tokens[i];
      text += (i + 1) % 16 == 0 ? '\n' : ' ';
    }
    deref(out_text) = dup(text);
    if (out_table) *out_table = new tp_embeddings{std::move(fixture.table)};
  });
}

/* autocorrelation */

tp_status tp_cosine(const double* u, size_t u_dim, const double* v, size_t v_dim, double* out) {
  return try_([&] {
    deref(out) = cosine({u, u_dim}, {v, v_dim});
  });
}

tp_status tp_acf(const tp_sequence* s, const char* lag_spec, int clamp, tp_acf_method method,
                 tp_curve** out) {
  return try_([&] {
    const auto& seq = deref(s).seq;
    LagGrid grid = parse_lag_grid(str(lag_spec));
    if (clamp) {
      grid = grid.clamped(seq.len());
      if (grid.lags.empty())
        throw Error(Errc::SequenceTooShort, "sequence of length " + std::to_string(seq.len()) +
                                                " admits no lag of this grid");
    }
    AcfCurve c = method == TP_ACF_DIRECT ? acf_direct(seq, grid) : acf_fft(seq, grid);
    c.source_id = s->source_id;
    deref(out) = new tp_curve{std::move(c)};
  });
}

tp_status tp_curve_from_points(const size_t* lags, const double* values, size_t count, size_t n,
                               tp_curve** out) {
  return try_([&] {
    if (count == 0) throw Error(Errc::EmptyInput, "curve has no points");
    if (!lags || !values) throw Error(Errc::InvalidArgument, "null pointer argument");
    deref(out) = new tp_curve{make_curve({lags, count}, {values, count}, n)};
  });
}

tp_status tp_curve_from_csv(const char* csv, size_t len, tp_curve** out) {
  return try_([&] {
    std::istringstream in(std::string(len ? csv : "", len));
    std::string line;
    std::vector<std::size_t> lags;
    std::vector<double> values;
    std::size_t n = 0;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line.rfind("lag", 0) == 0) continue;
      auto f = split(line, ',');
      if (f.size() < 2)
        throw Error(Errc::MalformedLine, "curve CSV line " + std::to_string(line_no) +
                                             ": expected lag,value[,pair_count]");
      lags.push_back(static_cast<std::size_t>(parse_long("lag", f[0])));
      values.push_back(parse_real("value", f[1]));
      if (f.size() >= 3) {
        std::size_t row_n = lags.back() + static_cast<std::size_t>(parse_long("pair_count", f[2]));
        if (n != 0 && row_n != n)
          throw Error(Errc::MalformedLine, "curve CSV line " + std::to_string(line_no) +
                                               ": lag + pair_count is inconsistent");
        n = row_n;
      }
    }
    if (lags.empty()) throw Error(Errc::EmptyInput, "curve CSV has no rows");
    if (n == 0) n = 2 * lags.back();
    deref(out) = new tp_curve{make_curve(lags, values, n)};
  });
}

size_t tp_curve_size(const tp_curve* c) { return c ? c->curve.points.size() : 0; }
size_t tp_curve_n(const tp_curve* c) { return c ? c->curve.n : 0; }

tp_status tp_curve_point(const tp_curve* c, size_t index, size_t* lag, double* value,
                         size_t* pair_count) {
  return try_([&] {
    const auto& pts = deref(c).curve.points;
    if (index >= pts.size()) throw Error(Errc::InvalidArgument, "curve index out of range");
    if (lag) *lag = pts[index].lag;
    if (value) *value = pts[index].value;
    if (pair_count) *pair_count = pts[index].pair_count;
  });
}

char* tp_curve_csv(const tp_curve* c) { return c ? dup(curve_csv(c->curve)) : nullptr; }
void tp_curve_free(tp_curve* c) { delete c; }

/* spectrum */

tp_status tp_spectrum_compute(const tp_curve* c, tp_spectrum** out) {
  return try_([&] { deref(out) = new tp_spectrum{acf_spectrum(deref(c).curve)}; });
}

size_t tp_spectrum_peak_index(const tp_spectrum* s) { return s ? s->result.peak_index : 0; }
double tp_spectrum_metric(const tp_spectrum* s) { return s ? s->result.periodicity_metric : 0.0; }
double tp_spectrum_implied_period(const tp_spectrum* s) {
  return s ? s->result.implied_period : 0.0;
}
size_t tp_spectrum_bins(const tp_spectrum* s) { return s ? s->result.magnitudes.size() : 0; }
double tp_spectrum_magnitude(const tp_spectrum* s, size_t k) {
  return s && k < s->result.magnitudes.size() ? s->result.magnitudes[k] : 0.0;
}
char* tp_spectrum_csv(const tp_spectrum* s) { return s ? dup(spectrum_csv(s->result)) : nullptr; }
char* tp_spectrum_json(const tp_spectrum* s) {
  return s ? dup(spectrum_json(s->result)) : nullptr;
}
void tp_spectrum_free(tp_spectrum* s) { delete s; }

tp_status tp_transition_csv(const double* temperatures, const tp_spectrum* const* spectra,
                            size_t count, char** out_csv) {
  return try_([&] {
    std::vector<std::pair<double, SpectrumResult>> in;
    for (size_t i = 0; i < count; ++i)
      in.emplace_back(deref(temperatures + i), deref(deref(spectra + i)).result);
    std::string csv = "temperature,mean_metric,std_metric,n\n";
    for (const auto& r : transition_curve(in))
      csv += format_double(r.temperature) + "," + format_double(r.mean_metric) + "," +
             format_double(r.std_metric) + "," + std::to_string(r.count) + "\n";
    deref(out_csv) = dup(csv);
  });
}

/* fits */

tp_status tp_fit_compute(const tp_curve* c, size_t min_lag, size_t max_lag, tp_fit** out) {
  return try_([&] {
    if (min_lag < 1 || max_lag < min_lag) throw Error(Errc::InvalidArgument, "invalid fit range");
    deref(out) = new tp_fit{gapelmaper(deref(c).curve, {min_lag, max_lag})};
  });
}

tp_gapelmaper_status tp_fit_status(const tp_fit* f) {
  return f ? static_cast<tp_gapelmaper_status>(f->result.status) : TP_GAPELMAPER_TOO_FEW_POINTS;
}

int tp_fit_gapelmaper(const tp_fit* f, double* out) {
  if (!f || !f->result.value) return 0;
  if (out) *out = *f->result.value;
  return 1;
}

int tp_fit_law(const tp_fit* f, tp_decay_law law, double* a, double* b, double* mape) {
  if (!f) return 0;
  const auto& r = law == TP_LAW_POWER ? f->result.power : f->result.exponential;
  if (!r) return 0;
  if (a) *a = r->amplitude;
  if (b) *b = r->rate;
  if (mape) *mape = r->mape;
  return 1;
}

char* tp_fit_json(const tp_fit* f) { return f ? dup(gapelmaper_json(f->result)) : nullptr; }
void tp_fit_free(tp_fit* f) { delete f; }

/* configuration */

tp_status tp_config_create(tp_config** out) {
  return try_([&] { deref(out) = new tp_config{}; });
}

tp_status tp_config_load(const char* path, tp_config** out) {
  return try_([&] { deref(out) = new tp_config{load_config(std::string(str(path)))}; });
}

tp_status tp_config_set(tp_config* c, const char* key, const char* value) {
  return try_([&] { deref(c).config.set(str(key), str(value)); });
}

double tp_config_periodicity_threshold(const tp_config* c) {
  return c ? c->config.periodicity_threshold : 0.0;
}
double tp_config_gapelmaper_threshold(const tp_config* c) {
  return c ? c->config.gapelmaper_threshold : 0.0;
}
size_t tp_config_required_length(const tp_config* c) {
  return c ? required_length(c->config) : 0;
}
void tp_config_free(tp_config* c) { delete c; }

/* classification */

const char* tp_phase_name(tp_phase p) { return phase_name(static_cast<Phase>(p)); }

tp_status tp_analyze(const tp_sequence* s, const tp_config* c, tp_analysis** out) {
  return try_([&] {
    const AnalysisConfig cfg = c ? c->config : AnalysisConfig{};
    const auto& seq = deref(s).seq;
    auto* a = new tp_analysis{};
    std::unique_ptr<tp_analysis> guard(a);
    a->analysis = analyze_sequence(seq, cfg);
    a->config = cfg;
    a->info = {s->source_id, s->word_count, seq.oov_count(), seq.dim()};
    a->periodic.curve = a->analysis.periodic_curve;
    a->fit.curve = a->analysis.fit_curve;
    a->long_range.curve = a->analysis.long_curve;
    a->spectrum.result = a->analysis.spectrum;
    a->fit_result.result = a->analysis.label.gapelmaper;
    a->long_fit.result = a->analysis.long_gapelmaper;
    deref(out) = guard.release();
  });
}

tp_phase tp_analysis_phase(const tp_analysis* a) {
  return a ? static_cast<tp_phase>(a->analysis.label.label) : TP_PHASE_INDETERMINATE;
}
double tp_analysis_periodicity_metric(const tp_analysis* a) {
  return a ? a->analysis.label.periodicity_metric : 0.0;
}
const tp_curve* tp_analysis_curve(const tp_analysis* a, tp_curve_kind kind) {
  if (!a) return nullptr;
  switch (kind) {
    case TP_CURVE_PERIODIC: return &a->periodic;
    case TP_CURVE_FIT: return &a->fit;
    case TP_CURVE_LONG: return &a->long_range;
  }
  return nullptr;
}
const tp_spectrum* tp_analysis_spectrum(const tp_analysis* a) { return a ? &a->spectrum : nullptr; }
const tp_fit* tp_analysis_fit(const tp_analysis* a, int long_range) {
  if (!a) return nullptr;
  return long_range ? &a->long_fit : &a->fit_result;
}
char* tp_analysis_json(const tp_analysis* a) {
  return a ? dup(label_json(a->analysis.label, &a->info)) : nullptr;
}
tp_status tp_analysis_write_bundle(const tp_analysis* a, const char* out_dir, int plot_script) {
  return try_([&] {
    const auto& an = deref(a);
    write_text_bundle(std::string(str(out_dir)), an.analysis, an.config, an.info, plot_script != 0);
  });
}
void tp_analysis_free(tp_analysis* a) { delete a; }

/* corpora and sweeps */

tp_status tp_corpus_scan(const char* dir, tp_manifest** out) {
  return try_([&] { deref(out) = wrap(scan_corpus(std::string(str(dir)))); });
}

tp_status tp_manifest_load(const char* manifest_json, tp_manifest** out) {
  return try_([&] { deref(out) = wrap(read_manifest(std::string(str(manifest_json)))); });
}

size_t tp_manifest_size(const tp_manifest* m) { return m ? m->manifest.entries.size() : 0; }
size_t tp_manifest_skipped(const tp_manifest* m) { return m ? m->manifest.skipped.size() : 0; }

tp_status tp_manifest_entry(const tp_manifest* m, size_t index, const char** path,
                            const char** model, double* temperature, long* seed) {
  return try_([&] {
    const auto& entries = deref(m).manifest.entries;
    if (index >= entries.size()) throw Error(Errc::InvalidArgument, "manifest index out of range");
    const auto& e = entries[index];
    if (path) *path = m->paths[index].c_str();
    if (model) *model = e.model.c_str();
    if (temperature) *temperature = e.temperature;
    if (seed) *seed = e.seed;
  });
}

char* tp_manifest_json(const tp_manifest* m) {
  if (!m) return nullptr;
  JsonWriter w;
  w.begin_object();
  w.key("root").value(m->manifest.root.string());
  w.key("entries").begin_array();
  for (const auto& e : m->manifest.entries) {
    w.begin_object();
    w.key("path").value(e.path.string());
    w.key("model").value(e.model);
    w.key("temperature").value(e.temperature);
    w.key("seed").value(e.seed);
    w.key("model_tokens");
    e.model_tokens ? w.value(*e.model_tokens) : w.null();
    w.key("word_count");
    e.word_count ? w.value(*e.word_count) : w.null();
    w.key("truncated").value(e.truncated);
    w.key("calls").value(e.calls);
    w.key("retries").value(e.retries);
    w.end_object();
  }
  w.end_array();
  w.key("skipped").begin_array();
  for (const auto& p : m->manifest.skipped) w.value(p.string());
  w.end_array();
  w.end_object();
  return dup(w.str());
}

void tp_manifest_free(tp_manifest* m) { delete m; }

tp_status tp_sweep_run(const tp_manifest* m, const tp_embeddings* e, const tp_config* c,
                       tp_sweep** out) {
  return try_([&] {
    const AnalysisConfig cfg = c ? c->config : AnalysisConfig{};
    const auto& table = deref(e).table;
    deref(out) = new tp_sweep{sweep(deref(m).manifest, table, cfg), cfg, table.dim()};
  });
}

size_t tp_sweep_rows(const tp_sweep* s) { return s ? s->report.rows.size() : 0; }
size_t tp_sweep_errors(const tp_sweep* s) {
  if (!s) return 0;
  size_t n = 0;
  for (const auto& r : s->report.rows) n += r.analysis ? 0 : 1;
  return n;
}
char* tp_sweep_rows_csv(const tp_sweep* s) { return s ? dup(sweep_rows_csv(s->report)) : nullptr; }
char* tp_sweep_transition_csv(const tp_sweep* s) {
  return s ? dup(transition_csv(s->report)) : nullptr;
}
char* tp_sweep_gapelmaper_csv(const tp_sweep* s) {
  return s ? dup(gapelmaper_table_csv(s->report)) : nullptr;
}
char* tp_sweep_summary_json(const tp_sweep* s) {
  return s ? dup(sweep_summary_json(s->report, s->config, s->dim)) : nullptr;
}
tp_status tp_sweep_write_bundle(const tp_sweep* s, const char* out_dir, int plot_script) {
  return try_([&] {
    const auto& sw = deref(s);
    write_sweep_bundle(std::string(str(out_dir)), sw.report, sw.config, sw.dim, plot_script != 0);
  });
}
void tp_sweep_free(tp_sweep* s) { delete s; }

/* generation */

tp_status tp_temperature_softmax(const double* logits, size_t n, double temperature,
                                 double* out) {
  return try_([&] {
    if (n == 0) throw Error(Errc::EmptyInput, "softmax of an empty vector");
    auto p = temperature_softmax({&deref(logits), n}, temperature);
    std::copy(p.begin(), p.end(), &deref(out));
  });
}

tp_status tp_gen_config_create(tp_gen_config** out) {
  return try_([&] { deref(out) = new tp_gen_config{}; });
}

tp_status tp_gen_config_set(tp_gen_config* c, const char* key_c, const char* value_c) {
  return try_([&] {
    auto& g = deref(c).config;
    const std::string_view key = str(key_c);
    const std::string_view value = str(value_c);
    if (key == "endpoint") {
      g.endpoint_url = value;
    } else if (key == "model") {
      g.model = value;
    } else if (key == "prompt") {
      g.prompt = value;
    } else if (key == "prompt_file") {
      g.prompt = read_text_file(std::string(value));
    } else if (key == "temperatures") {
      g.temperatures.clear();
      auto parts = split(value, ':');
      if (parts.size() == 3) {
        // start:stop:step, inclusive, rounded to 1e-9 to absorb accumulation
        const double a = parse_real(key, parts[0]), b = parse_real(key, parts[1]),
                     step = parse_real(key, parts[2]);
        if (!(step > 0)) throw Error(Errc::InvalidArgument, "temperature step must be > 0");
        for (long k = 0;; ++k) {
          double t = std::round((a + static_cast<double>(k) * step) * 1e9) / 1e9;
          if (t > b + 1e-9) break;
          g.temperatures.push_back(t);
        }
      } else {
        for (auto p : split(value, ',')) g.temperatures.push_back(parse_real(key, p));
      }
    } else if (key == "seeds") {
      g.seeds.clear();
      auto parts = split(value, ':');
      if (parts.size() == 2) {
        for (long s = parse_long(key, parts[0]); s <= parse_long(key, parts[1]); ++s)
          g.seeds.push_back(s);
      } else {
        for (auto p : split(value, ',')) g.seeds.push_back(parse_long(key, p));
      }
    } else if (key == "target_tokens") {
      g.target_tokens = parse_long(key, value);
    } else if (key == "max_tokens_per_call") {
      g.max_tokens_per_call = parse_long(key, value);
    } else if (key == "context_chars") {
      g.context_chars = static_cast<std::size_t>(parse_long(key, value));
    } else if (key == "output_dir") {
      g.output_dir = std::string(value);
    } else if (key == "api_key") {
      g.api_key = value;
    } else if (key == "require_auth") {
      g.require_auth = value == "1" || value == "true";
    } else if (key == "max_in_flight") {
      g.max_in_flight = static_cast<unsigned>(parse_long(key, value));
    } else if (key == "max_attempts") {
      g.max_attempts = static_cast<int>(parse_long(key, value));
    } else if (key == "backoff_ms") {
      g.backoff = std::chrono::milliseconds(parse_long(key, value));
    } else if (key == "timeout_s") {
      g.timeout = std::chrono::seconds(parse_long(key, value));
    } else {
      throw Error(Errc::InvalidArgument, "unknown generation key '" + std::string(key) + "'");
    }
  });
}

void tp_gen_config_set_log(tp_gen_config* c, void (*log)(const char*, void*), void* user) {
  if (!c) return;
  if (!log) {
    c->config.log = nullptr;
    return;
  }
  c->config.log = [log, user](const std::string& msg) { log(msg.c_str(), user); };
}

tp_status tp_generate(const tp_gen_config* c, tp_manifest** out) {
  return try_([&] {
    auto m = generate_corpus(deref(c).config);
    if (out) *out = wrap(std::move(m));
  });
}

void tp_gen_config_free(tp_gen_config* c) { delete c; }

}  // extern "C"
