#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "error.hpp"

namespace textphase {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string escape_json(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  out.push_back('"');
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(c));
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
  return out;
}

void JsonWriter::newline() {
  out_.push_back('\n');
  out_.append(2 * first_.size(), ' ');
}

void JsonWriter::before_value() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (first_.empty()) return;
  if (!first_.back()) out_.push_back(',');
  first_.back() = false;
  newline();
}

JsonWriter& JsonWriter::begin_object() {
  before_value();
  out_.push_back('{');
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  bool empty = first_.back();
  first_.pop_back();
  if (!empty) newline();
  out_.push_back('}');
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  before_value();
  out_.push_back('[');
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  bool empty = first_.back();
  first_.pop_back();
  if (!empty) newline();
  out_.push_back(']');
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
  before_value();
  out_ += escape_json(k);
  out_ += ": ";
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  if (!std::isfinite(v)) return value(std::string_view(format_double(v)));
  before_value();
  out_ += format_double(v);
  return *this;
}

JsonWriter& JsonWriter::value(long long v) {
  before_value();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  before_value();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
  before_value();
  out_ += escape_json(v);
  return *this;
}

JsonWriter& JsonWriter::null() {
  before_value();
  out_ += "null";
  return *this;
}

std::string curve_csv(const AcfCurve& curve) {
  std::string out = "lag,value,pair_count\n";
  for (const auto& p : curve.points)
    out += std::to_string(p.lag) + "," + format_double(p.value) + "," +
           std::to_string(p.pair_count) + "\n";
  return out;
}

std::string spectrum_csv(const SpectrumResult& s) {
  std::string out = "k,magnitude\n";
  for (std::size_t k = 0; k < s.magnitudes.size(); ++k)
    out += std::to_string(k) + "," + format_double(s.magnitudes[k]) + "\n";
  return out;
}

void write_spectrum(JsonWriter& w, const SpectrumResult& s) {
  w.begin_object();
  w.key("peak_index").value(s.peak_index);
  w.key("implied_period").value(s.implied_period);
  w.key("periodicity_metric").value(s.periodicity_metric);
  w.key("lag_count").value(s.lag_count);
  w.key("normalization").value("mean-subtracted, magnitudes / M, DC excluded from peak search");
  w.end_object();
}

namespace {

void write_fit(JsonWriter& w, const std::optional<FitResult>& f) {
  if (!f) {
    w.null();
    return;
  }
  w.begin_object();
  w.key("a").value(f->amplitude);
  w.key("b").value(f->rate);
  w.key("mape").value(f->mape);
  w.key("n_points").value(f->n_points);
  w.end_object();
}

void write_range(JsonWriter& w, LagRange r) {
  w.begin_array().value(r.min_lag).value(r.max_lag).end_array();
}

}  // namespace

void write_gapelmaper(JsonWriter& w, const GapelmaperResult& g) {
  w.begin_object();
  w.key("fit_range");
  write_range(w, g.fit_range);
  w.key("power");
  write_fit(w, g.power);
  w.key("exponential");
  write_fit(w, g.exponential);
  w.key("gapelmaper");
  if (g.value)
    w.value(*g.value);
  else
    w.null();
  w.key("status").value(status_name(g.status));
  w.end_object();
}

void write_label(JsonWriter& w, const PhaseLabel& l) {
  w.begin_object();
  w.key("label").value(phase_name(l.label));
  w.key("periodicity_metric").value(l.periodicity_metric);
  w.key("gapelmaper");
  write_gapelmaper(w, l.gapelmaper);
  w.key("thresholds").begin_object();
  w.key("periodicity").value(l.periodicity_threshold);
  w.key("gapelmaper").value(l.gapelmaper_threshold);
  w.end_object();
  w.end_object();
}

void write_config(JsonWriter& w, const AnalysisConfig& c) {
  w.begin_object();
  w.key("periodicity_threshold").value(c.periodicity_threshold);
  w.key("gapelmaper_threshold").value(c.gapelmaper_threshold);
  w.key("periodic_lags").begin_array().value(c.periodic_grid.lags.front())
      .value(c.periodic_grid.max_lag()).end_array();
  w.key("fit_range");
  write_range(w, c.fit_range);
  w.key("long_fit_range");
  write_range(w, c.long_fit_range);
  w.key("lag_grid").value("geometric, " + std::to_string(c.lags_per_decade) + " per decade");
  w.key("min_pair_count").value(kMinPairCount);
  w.end_object();
}

std::string spectrum_json(const SpectrumResult& s) {
  JsonWriter w;
  write_spectrum(w, s);
  return w.str();
}

std::string gapelmaper_json(const GapelmaperResult& g) {
  JsonWriter w;
  write_gapelmaper(w, g);
  return w.str();
}

namespace {

void write_info(JsonWriter& w, const TextInfo& info) {
  w.key("source").value(info.source_id);
  w.key("word_count").value(info.word_count);
  w.key("oov_count").value(info.oov_count);
  w.key("embedding_dim").value(info.dim);
}

}  // namespace

std::string label_json(const PhaseLabel& l, const TextInfo* info) {
  JsonWriter w;
  if (!info) {
    write_label(w, l);
    return w.str();
  }
  w.begin_object();
  write_info(w, *info);
  w.key("phase");
  write_label(w, l);
  w.end_object();
  return w.str();
}

std::string metadata_json(const AnalysisConfig& config, const TextInfo& info) {
  JsonWriter w;
  w.begin_object();
  w.key("tool").value("textphase");
  w.key("version").value(kVersion);
  write_info(w, info);
  w.key("config");
  write_config(w, config);
  w.end_object();
  return w.str();
}

std::string sweep_rows_csv(const SweepReport& r) {
  std::string out =
      "model,temperature,seed,path,word_count,label,periodicity_metric,implied_period,"
      "gapelmaper,gapelmaper_status,long_gapelmaper,long_gapelmaper_status,error\n";
  for (const auto& row : r.rows) {
    out += row.entry.model + "," + format_double(row.entry.temperature) + "," +
           std::to_string(row.entry.seed) + "," + row.entry.path.filename().string() + "," +
           std::to_string(row.word_count) + ",";
    if (row.analysis) {
      const auto& a = *row.analysis;
      const auto& g = a.label.gapelmaper;
      out += std::string(phase_name(a.label.label)) + "," +
             format_double(a.label.periodicity_metric) + "," +
             format_double(a.spectrum.implied_period) + "," +
             (g.value ? format_double(*g.value) : "") + "," + status_name(g.status) + "," +
             (a.long_gapelmaper.value ? format_double(*a.long_gapelmaper.value) : "") + "," +
             status_name(a.long_gapelmaper.status) + ",";
    } else {
      out += ",,,,,,,";
      out += errc_name(*row.error_code);
    }
    out += "\n";
  }
  return out;
}

std::string transition_csv(const SweepReport& r) {
  std::string out = "model,temperature,n,mean_metric,std_metric\n";
  for (const auto& s : r.summaries)
    out += s.model + "," + format_double(s.temperature) + "," +
           std::to_string(s.entries - s.errors) + "," + format_double(s.mean_metric) + "," +
           format_double(s.std_metric) + "\n";
  return out;
}

std::string gapelmaper_table_csv(const SweepReport& r) {
  std::string out =
      "model,temperature,n_ok,n_undefined,mean_gapelmaper,std_gapelmaper,"
      "long_n_ok,long_n_undefined,long_mean_gapelmaper,long_std_gapelmaper\n";
  for (const auto& s : r.summaries)
    out += s.model + "," + format_double(s.temperature) + "," + std::to_string(s.gapelmaper_ok) +
           "," + std::to_string(s.gapelmaper_undefined) + "," + format_double(s.mean_gapelmaper) +
           "," + format_double(s.std_gapelmaper) + "," + std::to_string(s.long_gapelmaper_ok) +
           "," + std::to_string(s.long_gapelmaper_undefined) + "," +
           format_double(s.mean_long_gapelmaper) + "," + format_double(s.std_long_gapelmaper) +
           "\n";
  return out;
}

std::string sweep_summary_json(const SweepReport& r, const AnalysisConfig& config,
                               std::size_t dim) {
  JsonWriter w;
  w.begin_object();
  w.key("tool").value("textphase");
  w.key("version").value(kVersion);
  w.key("embedding_dim").value(dim);
  w.key("config");
  write_config(w, config);
  w.key("rows").value(r.rows.size());
  w.key("summaries").begin_array();
  for (const auto& s : r.summaries) {
    w.begin_object();
    w.key("model").value(s.model);
    w.key("temperature").value(s.temperature);
    w.key("entries").value(s.entries);
    w.key("errors").value(s.errors);
    w.key("phase_counts").begin_object();
    for (std::size_t p = 0; p < kPhaseCount; ++p)
      w.key(phase_name(static_cast<Phase>(p))).value(s.phase_counts[p]);
    w.end_object();
    w.key("mean_metric").value(s.mean_metric);
    w.key("std_metric").value(s.std_metric);
    w.key("gapelmaper_ok").value(s.gapelmaper_ok);
    w.key("mean_gapelmaper").value(s.mean_gapelmaper);
    w.key("long_gapelmaper_ok").value(s.long_gapelmaper_ok);
    w.key("mean_long_gapelmaper").value(s.mean_long_gapelmaper);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

std::string plot_script(bool sweep) {
  std::string s =
      "#!/usr/bin/env python3\n"
      "# Plots the textphase CSV files in this directory.\n"
      "import csv, math, os, sys\n"
      "import matplotlib\n"
      "matplotlib.use('Agg')\n"
      "import matplotlib.pyplot as plt\n\n"
      "here = os.path.dirname(os.path.abspath(__file__))\n\n"
      "def rows(name):\n"
      "    with open(os.path.join(here, name)) as f:\n"
      "        return list(csv.DictReader(f))\n\n";
  if (!sweep) {
    s +=
        "acf = rows('acf_periodic.csv')\n"
        "spec = rows('spectrum.csv')\n"
        "fig, ax = plt.subplots(1, 2, figsize=(11, 4))\n"
        "ax[0].plot([int(r['lag']) for r in acf], [float(r['value']) for r in acf])\n"
        "ax[0].set_xlabel('lag (words)'); ax[0].set_ylabel('C(lag)')\n"
        "ax[1].plot([int(r['k']) for r in spec][1:], [float(r['magnitude']) for r in spec][1:])\n"
        "ax[1].set_xlabel('k'); ax[1].set_ylabel('|X_k|')\n"
        "fig.tight_layout(); fig.savefig(os.path.join(here, 'acf_spectrum.png'))\n\n"
        "for name in ('acf_medium.csv', 'acf_long.csv'):\n"
        "    pts = [(int(r['lag']), float(r['value'])) for r in rows(name)]\n"
        "    fig, ax = plt.subplots(1, 2, figsize=(11, 4))\n"
        "    ax[0].plot([p[0] for p in pts], [p[1] for p in pts])\n"
        "    pos = [p for p in pts if p[1] > 0]\n"
        "    ax[1].loglog([p[0] for p in pos], [p[1] for p in pos], '.')\n"
        "    for a in ax: a.set_xlabel('lag (words)')\n"
        "    fig.tight_layout(); fig.savefig(os.path.join(here, name.replace('.csv', '.png')))\n";
  } else {
    s +=
        "def by_model(table, y):\n"
        "    out = {}\n"
        "    for r in table:\n"
        "        if r[y] in ('', 'nan'): continue\n"
        "        out.setdefault(r['model'], []).append((float(r['temperature']), float(r[y])))\n"
        "    return out\n\n"
        "for name, y, png in (('transition.csv', 'mean_metric', 'transition.png'),\n"
        "                     ('gapelmaper_table.csv', 'mean_gapelmaper', 'gapelmaper.png'),\n"
        "                     ('gapelmaper_table.csv', 'long_mean_gapelmaper', 'gapelmaper_long.png')):\n"
        "    fig, ax = plt.subplots(figsize=(6, 4))\n"
        "    for model, pts in by_model(rows(name), y).items():\n"
        "        pts.sort()\n"
        "        ax.plot([p[0] for p in pts], [p[1] for p in pts], 'o-', label=model)\n"
        "    ax.set_xlabel('temperature'); ax.set_ylabel(y); ax.legend()\n"
        "    fig.tight_layout(); fig.savefig(os.path.join(here, png))\n";
  }
  return s;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(Errc::Io, "failed writing " + path.string());
}

void make_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::Io, "cannot create directory " + dir.string() + ": " + ec.message());
}

}  // namespace

void write_text_bundle(const std::filesystem::path& dir, const PhaseAnalysis& a,
                       const AnalysisConfig& config, const TextInfo& info, bool plot) {
  make_dir(dir);
  write_file(dir / "acf_periodic.csv", curve_csv(a.periodic_curve));
  write_file(dir / "acf_medium.csv", curve_csv(a.fit_curve));
  write_file(dir / "acf_long.csv", curve_csv(a.long_curve));
  write_file(dir / "spectrum.csv", spectrum_csv(a.spectrum));
  write_file(dir / "spectrum.json", spectrum_json(a.spectrum));
  write_file(dir / "fit_medium.json", gapelmaper_json(a.label.gapelmaper));
  write_file(dir / "fit_long.json", gapelmaper_json(a.long_gapelmaper));
  write_file(dir / "phase.json", label_json(a.label, &info));
  write_file(dir / "metadata.json", metadata_json(config, info));
  if (plot) write_file(dir / "plot.py", plot_script(false));
}

void write_sweep_bundle(const std::filesystem::path& dir, const SweepReport& report,
                        const AnalysisConfig& config, std::size_t dim, bool plot) {
  make_dir(dir);
  write_file(dir / "sweep_rows.csv", sweep_rows_csv(report));
  write_file(dir / "transition.csv", transition_csv(report));
  write_file(dir / "gapelmaper_table.csv", gapelmaper_table_csv(report));
  write_file(dir / "summary.json", sweep_summary_json(report, config, dim));
  if (plot) write_file(dir / "plot.py", plot_script(true));
}

}  // namespace textphase
