// textphase command-line tool. Talks to the library through the C API only.

#include <textphase/textphase.h>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

// Exit codes.
enum Exit : int {
  kOk = 0,
  kUsage = 1,        // bad flags, internal failures
  kInput = 2,        // unreadable / malformed input files, bad config
  kEmpty = 3,        // empty text or no token with an embedding
  kCompute = 4,      // text too short, fit refused, bad lag grid
  kGeneration = 5,   // endpoint, auth, server errors
};

int exit_code(tp_status s) {
  switch (s) {
    case TP_OK: return kOk;
    case TP_ERR_IO:
    case TP_ERR_MALFORMED_LINE:
    case TP_ERR_DIM_MISMATCH:
    case TP_ERR_EMPTY_FILE:
    case TP_ERR_NOT_A_DIRECTORY:
    case TP_ERR_DUPLICATE_TRIPLE:
    case TP_ERR_CONFIG:
    case TP_ERR_INVALID_ARGUMENT: return kInput;
    case TP_ERR_EMPTY_INPUT:
    case TP_ERR_ALL_TOKENS_OOV: return kEmpty;
    case TP_ERR_SEQUENCE_TOO_SHORT:
    case TP_ERR_NON_CONTIGUOUS_LAGS:
    case TP_ERR_TOO_FEW_LAGS:
    case TP_ERR_NON_POSITIVE_VALUES:
    case TP_ERR_TOO_FEW_POINTS:
    case TP_ERR_NON_FINITE:
    case TP_ERR_NON_POSITIVE_TEMPERATURE: return kCompute;
    case TP_ERR_ENDPOINT_UNREACHABLE:
    case TP_ERR_AUTH_MISSING:
    case TP_ERR_SERVER: return kGeneration;
    case TP_ERR_INTERNAL: return kUsage;
  }
  return kUsage;
}

struct Failure {
  int code;
};

void check(tp_status s) {
  if (s == TP_OK) return;
  std::cerr << "textphase: " << tp_status_name(s) << ": " << tp_last_error() << "\n";
  throw Failure{exit_code(s)};
}

[[noreturn]] void usage_error(const std::string& msg, int code = kUsage) {
  std::cerr << "textphase: " << msg << "\n";
  throw Failure{code};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
template <class T, void (*Free)(T*)>
using Handle = std::unique_ptr<T, Deleter<T, Free>>;

using Embeddings = Handle<tp_embeddings, tp_embeddings_free>;
using Sequence = Handle<tp_sequence, tp_sequence_free>;
using Curve = Handle<tp_curve, tp_curve_free>;
using Spectrum = Handle<tp_spectrum, tp_spectrum_free>;
using Fit = Handle<tp_fit, tp_fit_free>;
using Config = Handle<tp_config, tp_config_free>;
using Analysis = Handle<tp_analysis, tp_analysis_free>;
using Manifest = Handle<tp_manifest, tp_manifest_free>;
using Sweep = Handle<tp_sweep, tp_sweep_free>;
using GenConfig = Handle<tp_gen_config, tp_gen_config_free>;

std::string take(char* s) {
  if (!s) return {};
  std::string out(s);
  tp_string_free(s);
  return out;
}

struct Options {
  std::string embeddings;
  std::size_t dim = 0;
  std::string config;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 1;
  bool plot_script = false;
  bool use_stdin = false;
  std::string synthetic;
  std::size_t length = 10000;
  std::vector<std::string> inputs;

  std::string lags = "periodic-scan";
  std::string method = "fft";
  bool clamp = false;
  std::string from_acf;
  std::string range = "1:600";

  std::string corpus;
  std::string manifest;

  std::string endpoint;
  std::string model;
  std::string prompt_file;
  std::string temperatures;
  std::string seeds;
  long target_tokens = 10000;
  long max_tokens_per_call = 512;
  long context_chars = 8000;
  unsigned in_flight = 1;
  bool no_auth = false;
};

struct Text {
  std::string id;
  std::string body;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) usage_error("cannot open input file: " + path, kInput);
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

// Resolves the text inputs and the embedding table they are analyzed with.
struct Inputs {
  Embeddings table;
  std::vector<Text> texts;
};

Inputs load_inputs(const Options& o, bool allow_many) {
  Inputs in;
  if (!o.synthetic.empty()) {
    char* text = nullptr;
    tp_embeddings* table = nullptr;
    const std::size_t dim = o.dim ? o.dim : 50;
    check(tp_synthetic_text(o.synthetic.c_str(), o.length, dim, o.seed, &text,
                            o.embeddings.empty() ? &table : nullptr));
    in.texts.push_back({"synthetic-" + o.synthetic, take(text)});
    if (table) in.table.reset(table);
  } else if (o.use_stdin) {
    std::string body{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    in.texts.push_back({"stdin", std::move(body)});
  } else {
    if (o.inputs.empty()) usage_error("no input text (give FILE, --stdin or --synthetic)");
    if (o.inputs.size() > 1 && !allow_many) usage_error("this subcommand takes one input text");
    for (const auto& p : o.inputs) in.texts.push_back({p, {}});
  }
  if (!in.table) {
    if (o.embeddings.empty()) usage_error("--embeddings is required");
    tp_embeddings* e = nullptr;
    check(tp_embeddings_load(o.embeddings.c_str(), o.dim, &e));
    in.table.reset(e);
    if (tp_embeddings_duplicates(e) > 0)
      std::cerr << "textphase: warning: " << tp_embeddings_duplicates(e)
                << " duplicate words ignored in " << o.embeddings << "\n";
  }
  for (auto& t : in.texts)
    if (t.body.empty() && t.id != "stdin" && t.id.rfind("synthetic-", 0) != 0)
      t.body = read_file(t.id);
  return in;
}

Sequence make_sequence(const Inputs& in, const Text& t) {
  tp_sequence* s = nullptr;
  check(tp_sequence_from_text(in.table.get(), t.body.data(), t.body.size(), t.id.c_str(), &s));
  return Sequence(s);
}

Config load_config(const Options& o) {
  tp_config* c = nullptr;
  check(o.config.empty() ? tp_config_create(&c) : tp_config_load(o.config.c_str(), &c));
  return Config(c);
}

void emit(const Options& o, const std::string& file_name, const std::string& content) {
  if (o.out.empty()) {
    std::cout << content;
    return;
  }
  std::error_code ec;
  fs::create_directories(o.out, ec);
  const fs::path path = fs::path(o.out) / file_name;
  std::ofstream f(path, std::ios::binary);
  if (!f) usage_error("cannot write " + path.string(), kInput);
  f << content;
}

Curve curve_for(const Options& o, const std::string& lag_spec) {
  tp_curve* c = nullptr;
  if (!o.from_acf.empty()) {
    const std::string csv = read_file(o.from_acf);
    check(tp_curve_from_csv(csv.data(), csv.size(), &c));
    return Curve(c);
  }
  Inputs in = load_inputs(o, false);
  Sequence seq = make_sequence(in, in.texts.front());
  const tp_acf_method m = o.method == "direct" ? TP_ACF_DIRECT : TP_ACF_FFT;
  check(tp_acf(seq.get(), lag_spec.c_str(), o.clamp ? 1 : 0, m, &c));
  return Curve(c);
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& s) {
  auto colon = s.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument(s);
    return {std::stoul(s.substr(0, colon)), std::stoul(s.substr(colon + 1))};
  } catch (const std::exception&) {
    usage_error("invalid --range '" + s + "' (expected MIN:MAX)");
  }
}

std::string curve_json(const tp_curve* c) {
  std::ostringstream out;
  out << "{\n  \"n\": " << tp_curve_n(c) << ",\n  \"points\": [";
  for (std::size_t i = 0; i < tp_curve_size(c); ++i) {
    std::size_t lag = 0, pairs = 0;
    double v = 0;
    tp_curve_point(c, i, &lag, &v, &pairs);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    out << (i ? "," : "") << "\n    {\"lag\": " << lag << ", \"value\": " << buf
        << ", \"pair_count\": " << pairs << "}";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

int run_acf(const Options& o) {
  Curve c = curve_for(o, o.lags);
  if (o.format == "json")
    emit(o, "acf.json", curve_json(c.get()));
  else
    emit(o, "acf.csv", take(tp_curve_csv(c.get())));
  return kOk;
}

int run_spectrum(const Options& o) {
  Curve c = curve_for(o, o.lags);
  tp_spectrum* s = nullptr;
  check(tp_spectrum_compute(c.get(), &s));
  Spectrum spec(s);
  if (!o.out.empty()) {
    emit(o, "spectrum.csv", take(tp_spectrum_csv(s)));
    emit(o, "spectrum.json", take(tp_spectrum_json(s)));
  } else if (o.format == "json") {
    std::cout << take(tp_spectrum_json(s));
  } else {
    std::cout << take(tp_spectrum_csv(s));
  }
  return kOk;
}

int run_fit(const Options& o) {
  auto [lo, hi] = parse_range(o.range);
  Curve c = curve_for(o, "geo:" + std::to_string(lo) + ":" + std::to_string(hi));
  tp_fit* f = nullptr;
  check(tp_fit_compute(c.get(), lo, hi, &f));
  Fit fit(f);
  emit(o, "fit.json", take(tp_fit_json(f)));
  return kOk;
}

int run_classify(const Options& o) {
  Inputs in = load_inputs(o, false);
  Config cfg = load_config(o);
  Sequence seq = make_sequence(in, in.texts.front());
  tp_analysis* a = nullptr;
  check(tp_analyze(seq.get(), cfg.get(), &a));
  Analysis an(a);
  emit(o, "phase.json", take(tp_analysis_json(a)));
  return kOk;
}

int run_analyze(const Options& o) {
  Inputs in = load_inputs(o, true);
  Config cfg = load_config(o);
  for (const auto& t : in.texts) {
    Sequence seq = make_sequence(in, t);
    tp_analysis* a = nullptr;
    check(tp_analyze(seq.get(), cfg.get(), &a));
    Analysis an(a);
    if (!o.out.empty()) {
      fs::path dir = o.out;
      if (in.texts.size() > 1) dir /= fs::path(t.id).stem();
      check(tp_analysis_write_bundle(a, dir.string().c_str(), o.plot_script ? 1 : 0));
    }
    std::cout << take(tp_analysis_json(a));
  }
  return kOk;
}

int run_sweep(const Options& o) {
  if (o.corpus.empty() == o.manifest.empty()) usage_error("give exactly one of --corpus or --manifest");
  tp_manifest* m = nullptr;
  check(o.corpus.empty() ? tp_manifest_load(o.manifest.c_str(), &m)
                         : tp_corpus_scan(o.corpus.c_str(), &m));
  Manifest manifest(m);
  if (tp_manifest_skipped(m) > 0)
    std::cerr << "textphase: skipped " << tp_manifest_skipped(m)
              << " files not named <model>_t<T>_s<seed>.txt\n";
  if (o.embeddings.empty()) usage_error("--embeddings is required");
  tp_embeddings* e = nullptr;
  check(tp_embeddings_load(o.embeddings.c_str(), o.dim, &e));
  Embeddings table(e);
  Config cfg = load_config(o);
  tp_sweep* s = nullptr;
  check(tp_sweep_run(m, e, cfg.get(), &s));
  Sweep sweep(s);
  if (!o.out.empty()) check(tp_sweep_write_bundle(s, o.out.c_str(), o.plot_script ? 1 : 0));
  if (tp_sweep_errors(s) > 0)
    std::cerr << "textphase: " << tp_sweep_errors(s) << " of " << tp_sweep_rows(s)
              << " texts could not be analyzed (see sweep_rows.csv)\n";
  std::cout << (o.format == "json" ? take(tp_sweep_summary_json(s))
                                   : take(tp_sweep_transition_csv(s)));
  return kOk;
}

void log_to_stderr(const char* msg, void*) { std::cerr << "textphase: " << msg << "\n"; }

int run_generate(const Options& o) {
  tp_gen_config* g = nullptr;
  check(tp_gen_config_create(&g));
  GenConfig gen(g);
  auto set = [&](const char* key, const std::string& value) {
    if (!value.empty()) check(tp_gen_config_set(g, key, value.c_str()));
  };
  set("endpoint", o.endpoint);
  set("model", o.model);
  set("prompt_file", o.prompt_file);
  set("temperatures", o.temperatures);
  set("seeds", o.seeds);
  set("target_tokens", std::to_string(o.target_tokens));
  set("max_tokens_per_call", std::to_string(o.max_tokens_per_call));
  set("context_chars", std::to_string(o.context_chars));
  set("max_in_flight", std::to_string(o.in_flight));
  set("output_dir", o.out.empty() ? std::string(".") : o.out);
  if (const char* key = std::getenv("TEXTPHASE_API_KEY")) set("api_key", key);
  set("require_auth", o.no_auth ? "0" : "1");
  tp_gen_config_set_log(g, log_to_stderr, nullptr);

  tp_manifest* m = nullptr;
  check(tp_generate(g, &m));
  Manifest manifest(m);
  std::cout << take(tp_manifest_json(m));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"textphase: autocorrelation phase analysis of texts"};
  app.set_version_flag("--version", std::string(tp_version()));
  app.require_subcommand(1);

  app.add_option("--embeddings", o.embeddings, "Word embedding file (word f1 ... fd per line)");
  app.add_option("--dim", o.dim, "Expected embedding dimension (also the synthetic table dim)");
  app.add_option("--config", o.config, "Key-value config file (thresholds, ranges, presets)");
  app.add_option("--out", o.out, "Output directory for report files");
  app.add_option("--format", o.format, "Stdout format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", o.seed, "Seed for synthetic fixtures");
  app.add_flag("--plot-script", o.plot_script, "Also write plot.py next to the data files");
  app.add_flag("--stdin", o.use_stdin, "Read a single text from standard input");
  app.add_option("--synthetic", o.synthetic, "Synthetic input: periodic, shuffled, iid, critical")
      ->check(CLI::IsMember({"periodic", "shuffled", "iid", "critical"}));
  app.add_option("--length", o.length, "Word count of the synthetic input");

  auto text_inputs = [&](CLI::App* sub) {
    sub->add_option("files", o.inputs, "Input text files (UTF-8)");
  };
  auto curve_inputs = [&](CLI::App* sub) {
    text_inputs(sub);
    sub->add_option("--method", o.method, "ACF algorithm")
        ->check(CLI::IsMember({"fft", "direct"}));
    sub->add_flag("--clamp", o.clamp, "Drop lags the text is too short for instead of failing");
  };

  auto* analyze = app.add_subcommand("analyze", "Full pipeline: ACF, spectrum, fits, phase label");
  text_inputs(analyze);

  auto* acf = app.add_subcommand("acf", "Autocorrelation curve as CSV lag,value,pair_count");
  curve_inputs(acf);
  acf->add_option("--lags", o.lags, "periodic-scan | medium-range | long-range | LIST | MIN:MAX");

  auto* spectrum = app.add_subcommand("spectrum", "DFT of the ACF and the periodicity metric");
  curve_inputs(spectrum);
  spectrum->add_option("--lags", o.lags, "Contiguous lag grid (default periodic-scan)");
  spectrum->add_option("--from-acf", o.from_acf, "Use an ACF CSV instead of a text");

  auto* fit = app.add_subcommand("fit", "Power-law and exponential fits and GAPELMAPER");
  curve_inputs(fit);
  fit->add_option("--range", o.range, "Fit lag range MIN:MAX (default 1:600)");
  fit->add_option("--from-acf", o.from_acf, "Use an ACF CSV instead of a text");

  auto* classify = app.add_subcommand("classify", "Phase label of one text as JSON");
  text_inputs(classify);

  auto* sweep = app.add_subcommand("sweep", "Classify a corpus and tabulate by temperature");
  sweep->add_option("--corpus", o.corpus, "Directory of <model>_t<T>_s<seed>.txt files");
  sweep->add_option("--manifest", o.manifest, "manifest.json written by generate");

  auto* generate = app.add_subcommand(
      "generate", "Build a temperature-sweep corpus from a /v1/completions endpoint "
                  "(API key from TEXTPHASE_API_KEY)");
  generate->add_option("--endpoint", o.endpoint, "Server base URL, e.g. http://localhost:8000")
      ->required();
  generate->add_option("--model", o.model, "Model name sent to the server")->required();
  generate->add_option("--prompt-file", o.prompt_file, "Prompt text (default: Moby-Dick opening)");
  generate->add_option("--temperatures", o.temperatures,
                       "List '0.1,0.4' or START:STOP:STEP (default 0.1:2.5:0.3)");
  generate->add_option("--seeds", o.seeds, "List '1,2' or FIRST:LAST (default 1:10)");
  generate->add_option("--target-tokens", o.target_tokens, "Model tokens per text");
  generate->add_option("--max-tokens-per-call", o.max_tokens_per_call, "max_tokens per request");
  generate->add_option("--context-chars", o.context_chars,
                       "Characters of prompt + text sent back as the next prompt (0 = all)");
  generate->add_option("--in-flight", o.in_flight, "Concurrent (temperature, seed) runs");
  generate->add_flag("--no-auth", o.no_auth, "Do not require TEXTPHASE_API_KEY");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze) return run_analyze(o);
    if (*acf) return run_acf(o);
    if (*spectrum) return run_spectrum(o);
    if (*fit) return run_fit(o);
    if (*classify) return run_classify(o);
    if (*sweep) return run_sweep(o);
    if (*generate) return run_generate(o);
  } catch (const Failure& f) {
    return f.code;
  }
  return kUsage;
}
