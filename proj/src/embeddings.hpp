#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace textphase {

// Word -> vector map read from the usual "word f1 f2 ... fd" text format.
// Immutable after load.
class EmbeddingTable {
 public:
  EmbeddingTable(std::size_t dim, std::vector<std::string> words, std::vector<double> data,
                 std::size_t duplicates = 0);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  std::size_t duplicates() const noexcept { return duplicates_; }

  // Empty optional when the word has no vector.
  std::optional<std::span<const double>> find(std::string_view word) const;
  std::span<const double> vector_at(std::size_t index) const;
  const std::vector<std::string>& words() const noexcept { return words_; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::size_t dim_;
  std::size_t duplicates_;
  std::vector<std::string> words_;
  std::vector<double> data_;  // row-major, word_count x dim
  std::unordered_map<std::string, std::size_t, Hash, std::equal_to<>> index_;
};

// Throws Error{MalformedLine, DimMismatch, EmptyFile}. Duplicate words keep
// the first occurrence; the rest are counted in duplicates().
EmbeddingTable load_embeddings(std::istream& source, std::optional<std::size_t> expected_dim = {});
EmbeddingTable load_embeddings_file(const std::string& path,
                                    std::optional<std::size_t> expected_dim = {});

// Writes the table back in load_embeddings' format ("%.9g" components).
void save_embeddings(const EmbeddingTable& table, std::ostream& out);

// Centered per-text vector sequence. Row-major storage, len() x dim().
class VectorSequence {
 public:
  VectorSequence(std::size_t dim, std::vector<double> data, std::vector<bool> oov_mask,
                 std::vector<double> centroid);

  // Uses the vectors as given: no centering, nothing flagged OOV.
  static VectorSequence raw(std::size_t dim, std::vector<double> data);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t len() const noexcept { return oov_mask_.size(); }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
  std::span<const double> data() const noexcept { return data_; }
  const std::vector<bool>& oov_mask() const noexcept { return oov_mask_; }
  std::size_t oov_count() const noexcept;
  std::span<const double> centroid() const noexcept { return centroid_; }

  // Same vectors multiplied by factor > 0.
  VectorSequence scaled(double factor) const;

 private:
  std::size_t dim_;
  std::vector<double> data_;
  std::vector<bool> oov_mask_;
  std::vector<double> centroid_;
};

// Resolves tokens, subtracts the mean of the in-vocabulary vectors, and maps
// OOV tokens to the zero vector. Throws EmptyInput or AllTokensOov.
VectorSequence embed_and_center(std::span<const std::string> tokens, const EmbeddingTable& table);

}  // namespace textphase
