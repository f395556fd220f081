#ifndef LCCSEM_EMBEDDINGS_HPP
#define LCCSEM_EMBEDDINGS_HPP

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lccsem/tensor.hpp"

namespace lccsem {

class EmbeddingSpace {
 public:
  explicit EmbeddingSpace(std::size_t dimension = 0, std::vector<std::string> basis_labels = {});

  std::size_t dimension() const { return dimension_; }
  const std::vector<std::string>& basis_labels() const { return labels_; }
  std::size_t size() const { return words_.size(); }
  // Words in insertion order.
  const std::vector<std::string>& words() const { return words_; }

  bool contains(std::string_view word) const;
  // Throws EmbeddingError for unknown words.
  const std::vector<double>& vector(std::string_view word) const;
  TensorValue tensor(std::string_view word) const;

  // Lowercases the word; returns false if it replaced an existing vector.
  bool add(std::string word, std::vector<double> values);

  bool operator==(const EmbeddingSpace& other) const;

 private:
  std::size_t dimension_;
  std::vector<std::string> labels_;
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

enum class SpaceFormat { Text, Binary };

// Raw co-occurrence counts: 13 words over
// {human, painting, army, weapon, marathon, election}.
const EmbeddingSpace& toy_space();

// Text: optional `dim=N` and `basis=l1 ... lN` header lines, then
// `word v1 ... vN` per line. Binary: see README. Duplicate words keep the
// last vector and add a message to `warnings`.
EmbeddingSpace load_space(std::istream& in, SpaceFormat format, std::vector<std::string>* warnings = nullptr);
EmbeddingSpace load_space_file(const std::string& path, SpaceFormat format,
                               std::vector<std::string>* warnings = nullptr);

// Text format, 17 significant digits, so load(save(s)) == s.
void save_space(std::ostream& out, const EmbeddingSpace& space);
void save_space_binary(std::ostream& out, const EmbeddingSpace& space);

// Uniform [-1, 1) vectors from a seeded mt19937_64.
EmbeddingSpace random_space(const std::vector<std::string>& words, std::size_t dimension, std::uint64_t seed);

}  // namespace lccsem

#endif
