#include "embeddings.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "error.hpp"

namespace textphase {

EmbeddingTable::EmbeddingTable(std::size_t dim, std::vector<std::string> words,
                               std::vector<double> data, std::size_t duplicates)
    : dim_(dim), duplicates_(duplicates), words_(std::move(words)), data_(std::move(data)) {
  if (dim_ == 0) throw Error(Errc::InvalidArgument, "embedding dimension must be positive");
  if (words_.empty()) throw Error(Errc::EmptyFile, "embedding table has no words");
  if (data_.size() != words_.size() * dim_)
    throw Error(Errc::DimMismatch, "embedding data size does not match word_count x dim");
  index_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!index_.emplace(words_[i], i).second)
      throw Error(Errc::InvalidArgument, "duplicate word in embedding table: " + words_[i]);
  }
  for (double v : data_)
    if (!std::isfinite(v)) throw Error(Errc::NonFinite, "embedding component is not finite");
}

std::optional<std::span<const double>> EmbeddingTable::find(std::string_view word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return vector_at(it->second);
}

std::span<const double> EmbeddingTable::vector_at(std::size_t index) const {
  return {data_.data() + index * dim_, dim_};
}

namespace {

std::string malformed(std::size_t line_no, std::string_view why) {
  return "malformed embedding line " + std::to_string(line_no) + ": " + std::string(why);
}

}  // namespace

EmbeddingTable load_embeddings(std::istream& source, std::optional<std::size_t> expected_dim) {
  std::vector<std::string> words;
  std::vector<double> data;
  std::unordered_map<std::string, std::size_t> seen;
  std::size_t dim = 0;
  std::size_t duplicates = 0;
  std::vector<double> row;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::string_view rest(line);
    auto sp = rest.find(' ');
    if (sp == std::string_view::npos || sp == 0)
      throw Error(Errc::MalformedLine, malformed(line_no, "expected a word followed by floats"));
    std::string_view word = rest.substr(0, sp);
    rest.remove_prefix(sp + 1);

    row.clear();
    while (!rest.empty()) {
      auto end = rest.find(' ');
      std::string_view field = rest.substr(0, end);
      rest = end == std::string_view::npos ? std::string_view{} : rest.substr(end + 1);
      if (field.empty()) {
        // Tolerate a single trailing space, reject doubled separators.
        if (rest.empty()) break;
        throw Error(Errc::MalformedLine, malformed(line_no, "empty field"));
      }
      double v = 0.0;
      const char* first = field.data();
      if (*first == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, field.data() + field.size(), v);
      if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(v))
        throw Error(Errc::MalformedLine,
                    malformed(line_no, "cannot parse component '" + std::string(field) + "'"));
      row.push_back(v);
    }
    if (row.empty()) throw Error(Errc::MalformedLine, malformed(line_no, "no components"));

    if (dim == 0) {
      dim = row.size();
      if (expected_dim && *expected_dim != dim)
        throw Error(Errc::DimMismatch, "embedding dimension " + std::to_string(dim) +
                                           " differs from expected " +
                                           std::to_string(*expected_dim));
    } else if (row.size() != dim) {
      throw Error(Errc::MalformedLine,
                  malformed(line_no, "expected " + std::to_string(dim) + " components, got " +
                                         std::to_string(row.size())));
    }

    if (!seen.emplace(std::string(word), words.size()).second) {
      ++duplicates;
      continue;
    }
    words.emplace_back(word);
    data.insert(data.end(), row.begin(), row.end());
  }
  if (words.empty()) throw Error(Errc::EmptyFile, "embedding source contains no vectors");
  return EmbeddingTable(dim, std::move(words), std::move(data), duplicates);
}

EmbeddingTable load_embeddings_file(const std::string& path,
                                    std::optional<std::size_t> expected_dim) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open embeddings file: " + path);
  return load_embeddings(in, expected_dim);
}

void save_embeddings(const EmbeddingTable& table, std::ostream& out) {
  char buf[32];
  for (std::size_t i = 0; i < table.word_count(); ++i) {
    out << table.words()[i];
    for (double v : table.vector_at(i)) {
      std::snprintf(buf, sizeof buf, "%.9g", v);
      out << ' ' << buf;
    }
    out << '\n';
  }
}

VectorSequence::VectorSequence(std::size_t dim, std::vector<double> data,
                               std::vector<bool> oov_mask, std::vector<double> centroid)
    : dim_(dim), data_(std::move(data)), oov_mask_(std::move(oov_mask)),
      centroid_(std::move(centroid)) {
  if (dim_ == 0) throw Error(Errc::InvalidArgument, "vector dimension must be positive");
  if (data_.size() != oov_mask_.size() * dim_ || centroid_.size() != dim_)
    throw Error(Errc::DimMismatch, "vector sequence shape mismatch");
}

VectorSequence VectorSequence::raw(std::size_t dim, std::vector<double> data) {
  if (dim == 0 || data.size() % dim != 0)
    throw Error(Errc::DimMismatch, "raw vector data is not a multiple of dim");
  std::vector<bool> mask(data.size() / dim, false);
  return VectorSequence(dim, std::move(data), std::move(mask), std::vector<double>(dim, 0.0));
}

std::size_t VectorSequence::oov_count() const noexcept {
  std::size_t n = 0;
  for (bool b : oov_mask_) n += b ? 1 : 0;
  return n;
}

VectorSequence VectorSequence::scaled(double factor) const {
  std::vector<double> data = data_;
  for (double& v : data) v *= factor;
  std::vector<double> centroid = centroid_;
  for (double& v : centroid) v *= factor;
  return VectorSequence(dim_, std::move(data), oov_mask_, std::move(centroid));
}

VectorSequence embed_and_center(std::span<const std::string> tokens, const EmbeddingTable& table) {
  if (tokens.empty()) throw Error(Errc::EmptyInput, "no tokens to embed");
  const std::size_t dim = table.dim();
  const std::size_t n = tokens.size();

  std::vector<double> data(n * dim, 0.0);
  std::vector<bool> oov(n, true);
  std::vector<double> centroid(dim, 0.0);
  std::size_t found = 0;

  for (std::size_t i = 0; i < n; ++i) {
    auto vec = table.find(tokens[i]);
    if (!vec) continue;
    oov[i] = false;
    ++found;
    std::copy(vec->begin(), vec->end(), data.begin() + static_cast<std::ptrdiff_t>(i * dim));
    for (std::size_t j = 0; j < dim; ++j) centroid[j] += (*vec)[j];
  }
  if (found == 0) throw Error(Errc::AllTokensOov, "no token has an embedding");

  for (double& c : centroid) c /= static_cast<double>(found);
  for (std::size_t i = 0; i < n; ++i) {
    if (oov[i]) continue;
    double* row = data.data() + i * dim;
    for (std::size_t j = 0; j < dim; ++j) row[j] -= centroid[j];
  }
  return VectorSequence(dim, std::move(data), std::move(oov), std::move(centroid));
}

}  // namespace textphase
