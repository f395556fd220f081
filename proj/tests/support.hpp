#ifndef LCCSEM_TESTS_SUPPORT_HPP
#define LCCSEM_TESTS_SUPPORT_HPP

#include <fstream>
#include <iterator>
#include <random>
#include <string>

#include "lccsem/embeddings.hpp"
#include "lccsem/tensor.hpp"

namespace testing {

inline std::string data_path(const std::string& name) { return std::string(LCCSEM_TEST_DATA) + "/" + name; }

inline std::string read_data(const std::string& name) {
  std::ifstream in(data_path(name));
  return {std::istreambuf_iterator<char>(in), {}};
}

inline lccsem::TensorValue random_tensor(std::mt19937_64& rng, lccsem::Shape shape) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  lccsem::TensorValue t = lccsem::TensorValue::zeros(std::move(shape));
  for (double& x : t.data()) x = u(rng);
  return t;
}

inline std::size_t random_dim(std::mt19937_64& rng, std::size_t lo = 1, std::size_t hi = 4) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Every word of `words` gets an independent random vector.
inline lccsem::EmbeddingSpace random_vectors(const std::vector<std::string>& words, std::size_t dim,
                                             std::uint64_t seed) {
  return lccsem::random_space(words, dim, seed);
}

}  // namespace testing

#endif
