/*
 * textphase C API.
 *
 * Every object is an opaque handle created by a tp_*_create / tp_*_load /
 * tp_*_compute call and released with the matching tp_*_free. Functions that
 * can fail return tp_status; the message for the most recent failure on the
 * calling thread is available from tp_last_error(). Strings returned as
 * `char*` are owned by the caller and released with tp_string_free().
 */
#ifndef TEXTPHASE_TEXTPHASE_H
#define TEXTPHASE_TEXTPHASE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TEXTPHASE_BUILDING)
#    define TEXTPHASE_API __declspec(dllexport)
#  else
#    define TEXTPHASE_API __declspec(dllimport)
#  endif
#else
#  define TEXTPHASE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tp_status {
  TP_OK = 0,
  TP_ERR_IO = 1,
  TP_ERR_MALFORMED_LINE = 2,
  TP_ERR_DIM_MISMATCH = 3,
  TP_ERR_EMPTY_FILE = 4,
  TP_ERR_EMPTY_INPUT = 5,
  TP_ERR_ALL_TOKENS_OOV = 6,
  TP_ERR_SEQUENCE_TOO_SHORT = 7,
  TP_ERR_NON_CONTIGUOUS_LAGS = 8,
  TP_ERR_TOO_FEW_LAGS = 9,
  TP_ERR_NON_POSITIVE_VALUES = 10,
  TP_ERR_TOO_FEW_POINTS = 11,
  TP_ERR_NOT_A_DIRECTORY = 12,
  TP_ERR_DUPLICATE_TRIPLE = 13,
  TP_ERR_NON_FINITE = 14,
  TP_ERR_NON_POSITIVE_TEMPERATURE = 15,
  TP_ERR_ENDPOINT_UNREACHABLE = 16,
  TP_ERR_AUTH_MISSING = 17,
  TP_ERR_SERVER = 18,
  TP_ERR_INVALID_ARGUMENT = 19,
  TP_ERR_CONFIG = 20,
  TP_ERR_INTERNAL = 99
} tp_status;

typedef enum tp_acf_method { TP_ACF_FFT = 0, TP_ACF_DIRECT = 1 } tp_acf_method;

typedef enum tp_phase {
  TP_PHASE_PERIODIC = 0,
  TP_PHASE_CRITICAL = 1,
  TP_PHASE_AMORPHOUS = 2,
  TP_PHASE_INDETERMINATE = 3
} tp_phase;

typedef enum tp_gapelmaper_status {
  TP_GAPELMAPER_OK = 0,
  TP_GAPELMAPER_UNDEFINED_NONPOSITIVE_ACF = 1,
  TP_GAPELMAPER_TOO_FEW_POINTS = 2
} tp_gapelmaper_status;

typedef enum tp_decay_law { TP_LAW_POWER = 0, TP_LAW_EXPONENTIAL = 1 } tp_decay_law;

/* Curves held by an analysis. */
typedef enum tp_curve_kind {
  TP_CURVE_PERIODIC = 0, /* lags 1..100 */
  TP_CURVE_FIT = 1,      /* classification fit range (1..600) */
  TP_CURVE_LONG = 2      /* long range (1..6000, clamped to the text) */
} tp_curve_kind;

typedef struct tp_embeddings tp_embeddings;
typedef struct tp_sequence tp_sequence;
typedef struct tp_curve tp_curve;
typedef struct tp_spectrum tp_spectrum;
typedef struct tp_fit tp_fit;
typedef struct tp_config tp_config;
typedef struct tp_analysis tp_analysis;
typedef struct tp_manifest tp_manifest;
typedef struct tp_sweep tp_sweep;
typedef struct tp_gen_config tp_gen_config;

TEXTPHASE_API const char* tp_version(void);
TEXTPHASE_API const char* tp_status_name(tp_status status);
TEXTPHASE_API const char* tp_last_error(void);
TEXTPHASE_API void tp_string_free(char* s);

/* ---- embeddings ------------------------------------------------------ */

/* expected_dim == 0 disables the dimension check. */
TEXTPHASE_API tp_status tp_embeddings_load(const char* path, size_t expected_dim,
                                           tp_embeddings** out);
/* Standard-normal vectors for the given words (synthetic fixtures). */
TEXTPHASE_API tp_status tp_embeddings_random(const char* const* words, size_t count, size_t dim,
                                             uint64_t seed, tp_embeddings** out);
TEXTPHASE_API size_t tp_embeddings_dim(const tp_embeddings* e);
TEXTPHASE_API size_t tp_embeddings_word_count(const tp_embeddings* e);
TEXTPHASE_API size_t tp_embeddings_duplicates(const tp_embeddings* e);
TEXTPHASE_API tp_status tp_embeddings_save(const tp_embeddings* e, const char* path);
TEXTPHASE_API void tp_embeddings_free(tp_embeddings* e);

/* ---- text and sequences ---------------------------------------------- */

/* Tokens of a UTF-8 text, one per line. */
TEXTPHASE_API tp_status tp_tokenize(const char* text, size_t len, char** out_tokens,
                                    size_t* out_count);

/* tokenize + embed + center. */
TEXTPHASE_API tp_status tp_sequence_from_text(const tp_embeddings* e, const char* text,
                                              size_t len, const char* source_id,
                                              tp_sequence** out);
/* Row-major n x dim vectors used as-is (no centering). */
TEXTPHASE_API tp_status tp_sequence_from_vectors(const double* data, size_t n, size_t dim,
                                                 tp_sequence** out);
TEXTPHASE_API size_t tp_sequence_length(const tp_sequence* s);
TEXTPHASE_API size_t tp_sequence_dim(const tp_sequence* s);
TEXTPHASE_API size_t tp_sequence_oov_count(const tp_sequence* s);
TEXTPHASE_API void tp_sequence_free(tp_sequence* s);

/* Synthetic texts: kind is "periodic" (the devouring cycle), "shuffled"
 * (same tokens permuted), "iid" (uniform over a 1000-word lexicon) or
 * "critical" (long-memory surrogate). When out_table is non-NULL it receives
 * random embeddings of dimension dim covering the text's vocabulary. */
TEXTPHASE_API tp_status tp_synthetic_text(const char* kind, size_t n_words, size_t dim,
                                          uint64_t seed, char** out_text,
                                          tp_embeddings** out_table);

/* ---- autocorrelation ------------------------------------------------- */

TEXTPHASE_API tp_status tp_cosine(const double* u, size_t u_dim, const double* v, size_t v_dim,
                                  double* out);
/* lag_spec: "periodic-scan", "medium-range", "long-range", "1,2,5", "1:100"
 * or "geo:1:600" (60 geometric lags per decade).
 * clamp != 0 drops lags the sequence cannot support instead of failing. */
TEXTPHASE_API tp_status tp_acf(const tp_sequence* s, const char* lag_spec, int clamp,
                               tp_acf_method method, tp_curve** out);
TEXTPHASE_API tp_status tp_curve_from_points(const size_t* lags, const double* values,
                                             size_t count, size_t n, tp_curve** out);
/* Parses "lag,value,pair_count" CSV as written by tp_curve_csv. */
TEXTPHASE_API tp_status tp_curve_from_csv(const char* csv, size_t len, tp_curve** out);
TEXTPHASE_API size_t tp_curve_size(const tp_curve* c);
TEXTPHASE_API size_t tp_curve_n(const tp_curve* c);
TEXTPHASE_API tp_status tp_curve_point(const tp_curve* c, size_t index, size_t* lag,
                                       double* value, size_t* pair_count);
TEXTPHASE_API char* tp_curve_csv(const tp_curve* c);
TEXTPHASE_API void tp_curve_free(tp_curve* c);

/* ---- spectrum -------------------------------------------------------- */

TEXTPHASE_API tp_status tp_spectrum_compute(const tp_curve* c, tp_spectrum** out);
TEXTPHASE_API size_t tp_spectrum_peak_index(const tp_spectrum* s);
TEXTPHASE_API double tp_spectrum_metric(const tp_spectrum* s);
TEXTPHASE_API double tp_spectrum_implied_period(const tp_spectrum* s);
TEXTPHASE_API size_t tp_spectrum_bins(const tp_spectrum* s);
TEXTPHASE_API double tp_spectrum_magnitude(const tp_spectrum* s, size_t k);
TEXTPHASE_API char* tp_spectrum_csv(const tp_spectrum* s);
TEXTPHASE_API char* tp_spectrum_json(const tp_spectrum* s);
TEXTPHASE_API void tp_spectrum_free(tp_spectrum* s);
/* CSV "temperature,mean_metric,std_metric,n" over (temperature, spectrum) pairs. */
TEXTPHASE_API tp_status tp_transition_csv(const double* temperatures,
                                          const tp_spectrum* const* spectra, size_t count,
                                          char** out_csv);

/* ---- decay-law fits -------------------------------------------------- */

TEXTPHASE_API tp_status tp_fit_compute(const tp_curve* c, size_t min_lag, size_t max_lag,
                                       tp_fit** out);
TEXTPHASE_API tp_gapelmaper_status tp_fit_status(const tp_fit* f);
/* Returns 1 and stores the ratio when defined, 0 otherwise. */
TEXTPHASE_API int tp_fit_gapelmaper(const tp_fit* f, double* out);
/* Returns 1 and stores a, b, MAPE when that law was fitted, 0 otherwise. */
TEXTPHASE_API int tp_fit_law(const tp_fit* f, tp_decay_law law, double* a, double* b,
                             double* mape);
TEXTPHASE_API char* tp_fit_json(const tp_fit* f);
TEXTPHASE_API void tp_fit_free(tp_fit* f);

/* ---- configuration --------------------------------------------------- */

TEXTPHASE_API tp_status tp_config_create(tp_config** out);
TEXTPHASE_API tp_status tp_config_load(const char* path, tp_config** out);
/* Same keys as the config file (periodicity_threshold, gapelmaper_threshold,
 * periodic_lags, fit_range, long_fit_range, lags_per_decade, threads). */
TEXTPHASE_API tp_status tp_config_set(tp_config* c, const char* key, const char* value);
TEXTPHASE_API double tp_config_periodicity_threshold(const tp_config* c);
TEXTPHASE_API double tp_config_gapelmaper_threshold(const tp_config* c);
TEXTPHASE_API size_t tp_config_required_length(const tp_config* c);
TEXTPHASE_API void tp_config_free(tp_config* c);

/* ---- classification -------------------------------------------------- */

TEXTPHASE_API const char* tp_phase_name(tp_phase p);
TEXTPHASE_API tp_status tp_analyze(const tp_sequence* s, const tp_config* c, tp_analysis** out);
TEXTPHASE_API tp_phase tp_analysis_phase(const tp_analysis* a);
TEXTPHASE_API double tp_analysis_periodicity_metric(const tp_analysis* a);
/* Borrowed; valid until tp_analysis_free. */
TEXTPHASE_API const tp_curve* tp_analysis_curve(const tp_analysis* a, tp_curve_kind kind);
TEXTPHASE_API const tp_spectrum* tp_analysis_spectrum(const tp_analysis* a);
/* 0 = classification range, 1 = long range. Borrowed. */
TEXTPHASE_API const tp_fit* tp_analysis_fit(const tp_analysis* a, int long_range);
TEXTPHASE_API char* tp_analysis_json(const tp_analysis* a);
/* Writes the per-text report files into out_dir (created if needed). */
TEXTPHASE_API tp_status tp_analysis_write_bundle(const tp_analysis* a, const char* out_dir,
                                                 int plot_script);
TEXTPHASE_API void tp_analysis_free(tp_analysis* a);

/* ---- corpora and sweeps ---------------------------------------------- */

TEXTPHASE_API tp_status tp_corpus_scan(const char* dir, tp_manifest** out);
TEXTPHASE_API tp_status tp_manifest_load(const char* manifest_json, tp_manifest** out);
TEXTPHASE_API size_t tp_manifest_size(const tp_manifest* m);
TEXTPHASE_API size_t tp_manifest_skipped(const tp_manifest* m);
/* Borrowed strings; NULL out-params are ignored. */
TEXTPHASE_API tp_status tp_manifest_entry(const tp_manifest* m, size_t index, const char** path,
                                          const char** model, double* temperature, long* seed);
TEXTPHASE_API char* tp_manifest_json(const tp_manifest* m);
TEXTPHASE_API void tp_manifest_free(tp_manifest* m);

TEXTPHASE_API tp_status tp_sweep_run(const tp_manifest* m, const tp_embeddings* e,
                                     const tp_config* c, tp_sweep** out);
TEXTPHASE_API size_t tp_sweep_rows(const tp_sweep* s);
TEXTPHASE_API size_t tp_sweep_errors(const tp_sweep* s);
/* Per-row CSV, transition table, GAPELMAPER table, summary JSON. */
TEXTPHASE_API char* tp_sweep_rows_csv(const tp_sweep* s);
TEXTPHASE_API char* tp_sweep_transition_csv(const tp_sweep* s);
TEXTPHASE_API char* tp_sweep_gapelmaper_csv(const tp_sweep* s);
TEXTPHASE_API char* tp_sweep_summary_json(const tp_sweep* s);
TEXTPHASE_API tp_status tp_sweep_write_bundle(const tp_sweep* s, const char* out_dir,
                                              int plot_script);
TEXTPHASE_API void tp_sweep_free(tp_sweep* s);

/* ---- generation ------------------------------------------------------ */

TEXTPHASE_API tp_status tp_temperature_softmax(const double* logits, size_t n, double temperature,
                                               double* out);

TEXTPHASE_API tp_status tp_gen_config_create(tp_gen_config** out);
/* Keys: endpoint, model, prompt, prompt_file, temperatures ("0.1,0.4" or
 * "0.1:2.5:0.3"), seeds ("1,2" or "1:10"), target_tokens,
 * max_tokens_per_call, context_chars, output_dir, api_key, require_auth,
 * max_in_flight, max_attempts, backoff_ms, timeout_s. */
TEXTPHASE_API tp_status tp_gen_config_set(tp_gen_config* c, const char* key, const char* value);
TEXTPHASE_API void tp_gen_config_set_log(tp_gen_config* c,
                                         void (*log)(const char* message, void* user),
                                         void* user);
TEXTPHASE_API tp_status tp_generate(const tp_gen_config* c, tp_manifest** out);
TEXTPHASE_API void tp_gen_config_free(tp_gen_config* c);

#ifdef __cplusplus
}
#endif

#endif /* TEXTPHASE_TEXTPHASE_H */
