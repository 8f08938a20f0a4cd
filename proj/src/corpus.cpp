#include "corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <tuple>

#include "error.hpp"

namespace textphase {

namespace {

struct Decoded {
  char32_t cp;
  std::size_t len;  // bytes consumed
  bool valid;
};

Decoded decode(std::string_view s, std::size_t i) {
  auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return {b0, 1, true};
  std::size_t len = b0 >= 0xF0 ? 4 : b0 >= 0xE0 ? 3 : b0 >= 0xC0 ? 2 : 0;
  if (len == 0 || len > 4 || i + len > s.size()) return {b0, 1, false};
  char32_t cp = b0 & (0x7F >> len);
  for (std::size_t k = 1; k < len; ++k) {
    auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return {b0, 1, false};
    cp = (cp << 6) | (b & 0x3F);
  }
  return {cp, len, true};
}

void encode(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_space(char32_t c) {
  return c == ' ' || (c >= 0x09 && c <= 0x0D) || c == 0x85 || c == 0xA0 || c == 0x1680 ||
         (c >= 0x2000 && c <= 0x200A) || c == 0x2028 || c == 0x2029 || c == 0x202F ||
         c == 0x205F || c == 0x3000 || c == 0xFEFF;
}

bool is_punct(char32_t c) {
  if (c < 0x80) return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) ||
                       (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E);
  return c == 0xA1 || c == 0xA7 || c == 0xAB || c == 0xB6 || c == 0xB7 || c == 0xBB ||
         c == 0xBF || (c >= 0x2010 && c <= 0x2027) || (c >= 0x2030 && c <= 0x205E) ||
         (c >= 0x3001 && c <= 0x3003) || (c >= 0x3008 && c <= 0x3011) ||
         (c >= 0xFF01 && c <= 0xFF0F) || c == 0xFF1A || c == 0xFF1B || c == 0xFF1F;
}

// Simple case folding for Latin-1, Latin Extended-A, Greek and Cyrillic.
char32_t to_lower(char32_t c) {
  if (c >= 'A' && c <= 'Z') return c + 32;
  if (c < 0x80) return c;
  if ((c >= 0xC0 && c <= 0xDE) && c != 0xD7) return c + 32;
  if (c >= 0x100 && c <= 0x137 && c % 2 == 0) return c + 1;
  if (c >= 0x139 && c <= 0x148 && c % 2 == 1) return c + 1;
  if (c >= 0x14A && c <= 0x177 && c % 2 == 0) return c + 1;
  if (c == 0x178) return 0xFF;
  if (c == 0x179 || c == 0x17B || c == 0x17D) return c + 1;
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 32;
  if (c >= 0x410 && c <= 0x42F) return c + 32;
  if (c >= 0x400 && c <= 0x40F) return c + 80;
  return c;
}

void flush_piece(const std::vector<Decoded>& piece, std::vector<std::string>& out) {
  std::size_t lo = 0;
  std::size_t hi = piece.size();
  while (lo < hi && piece[lo].valid && is_punct(piece[lo].cp)) ++lo;
  while (hi > lo && piece[hi - 1].valid && is_punct(piece[hi - 1].cp)) --hi;
  if (lo == hi) return;
  std::string tok;
  for (std::size_t k = lo; k < hi; ++k) {
    if (piece[k].valid)
      encode(to_lower(piece[k].cp), tok);
    else
      tok.push_back(static_cast<char>(piece[k].cp));
  }
  out.push_back(std::move(tok));
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::vector<Decoded> piece;
  std::size_t i = 0;
  while (i < text.size()) {
    Decoded d = decode(text, i);
    i += d.len;
    if (d.valid && is_space(d.cp)) {
      flush_piece(piece, out);
      piece.clear();
    } else {
      piece.push_back(d);
    }
  }
  flush_piece(piece, out);
  return out;
}

std::string format_temperature(double t) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, t);
  std::string s(buf, ec == std::errc{} ? ptr : buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string corpus_file_name(std::string_view model, double temperature, long seed) {
  return std::string(model) + "_t" + format_temperature(temperature) + "_s" +
         std::to_string(seed) + ".txt";
}

std::optional<TextMeta> parse_corpus_file_name(std::string_view file_name) {
  static const std::regex pattern(R"(^(.+)_t([0-9]+(?:\.[0-9]+)?)_s(-?[0-9]+)\.txt$)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(file_name.begin(), file_name.end(), m, pattern)) return std::nullopt;
  TextMeta meta;
  meta.model = m[1].str();
  std::string t = m[2].str();
  std::string s = m[3].str();
  std::from_chars(t.data(), t.data() + t.size(), meta.temperature);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), meta.seed);
  if (ec != std::errc{} || !std::isfinite(meta.temperature)) return std::nullopt;
  return meta;
}

CorpusManifest scan_corpus(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(root, ec))
    throw Error(Errc::NotADirectory, "not a directory: " + root.string());

  CorpusManifest manifest;
  manifest.root = root;
  std::map<std::tuple<std::string, double, long>, fs::path> seen;

  std::vector<fs::path> files;
  for (const auto& de : fs::recursive_directory_iterator(root))
    if (de.is_regular_file()) files.push_back(de.path());
  std::sort(files.begin(), files.end());

  for (const auto& p : files) {
    auto meta = parse_corpus_file_name(p.filename().string());
    if (!meta) {
      manifest.skipped.push_back(p);
      continue;
    }
    auto key = std::make_tuple(meta->model, meta->temperature, meta->seed);
    auto [it, inserted] = seen.emplace(key, p);
    if (!inserted)
      throw Error(Errc::DuplicateTriple, "duplicate (model, temperature, seed) in " +
                                             it->second.string() + " and " + p.string());
    ManifestEntry e;
    e.path = p;
    e.model = meta->model;
    e.temperature = meta->temperature;
    e.seed = meta->seed;
    manifest.entries.push_back(std::move(e));
  }
  std::sort(manifest.entries.begin(), manifest.entries.end(), [](const auto& a, const auto& b) {
    return std::tie(a.model, a.temperature, a.seed) < std::tie(b.model, b.temperature, b.seed);
  });
  return manifest;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open text file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

}  // namespace textphase
