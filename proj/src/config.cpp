#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

#include "error.hpp"

namespace textphase {

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out))
    throw Error(Errc::Config, "invalid number for " + std::string(key) + ": '" + std::string(v) + "'");
  return out;
}

unsigned long parse_uint(std::string_view key, std::string_view v) {
  unsigned long out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size())
    throw Error(Errc::Config, "invalid integer for " + std::string(key) + ": '" + std::string(v) + "'");
  return out;
}

}  // namespace

void AnalysisConfig::set(std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  try {
    if (key == "periodicity_threshold") {
      periodicity_threshold = parse_double(key, value);
      if (periodicity_threshold < 0) throw Error(Errc::Config, "periodicity_threshold must be >= 0");
    } else if (key == "gapelmaper_threshold") {
      gapelmaper_threshold = parse_double(key, value);
      if (gapelmaper_threshold <= 0) throw Error(Errc::Config, "gapelmaper_threshold must be > 0");
    } else if (key == "periodic_lags") {
      LagGrid g = parse_lag_grid(value);
      for (std::size_t i = 1; i < g.lags.size(); ++i)
        if (g.lags[i] != g.lags[i - 1] + 1)
          throw Error(Errc::Config, "periodic_lags must be a contiguous range");
      periodic_grid = std::move(g);
    } else if (key == "fit_range") {
      fit_range = parse_lag_range(value);
    } else if (key == "long_fit_range") {
      long_fit_range = parse_lag_range(value);
    } else if (key == "lags_per_decade") {
      lags_per_decade = parse_uint(key, value);
      if (lags_per_decade == 0) throw Error(Errc::Config, "lags_per_decade must be positive");
    } else if (key == "threads") {
      threads = static_cast<unsigned>(parse_uint(key, value));
    } else {
      throw Error(Errc::Config, "unknown config key '" + std::string(key) + "'");
    }
  } catch (const Error& e) {
    if (e.code() == Errc::Config) throw;
    throw Error(Errc::Config, e.what());
  }
}

AnalysisConfig parse_config(std::istream& in) {
  AnalysisConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    auto eq = s.find('=');
    if (eq == std::string_view::npos)
      throw Error(Errc::Config, "config line " + std::to_string(line_no) + ": expected key = value");
    cfg.set(s.substr(0, eq), s.substr(eq + 1));
  }
  return cfg;
}

AnalysisConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open config file: " + path.string());
  return parse_config(in);
}

}  // namespace textphase
