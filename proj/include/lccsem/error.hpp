#ifndef LCCSEM_ERROR_HPP
#define LCCSEM_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lccsem {

// Base class for every error raised on bad input. The CLI maps it to exit 2.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position(position) {}
  std::size_t position;
};

struct LexiconError : Error {
  using Error::Error;
};

struct TermError : Error {
  using Error::Error;
};

// Step bound hit during normalization; only reachable for ill-typed terms.
struct FuelExhausted : TermError {
  using TermError::TermError;
};

struct DerivationError : Error {
  using Error::Error;
};

struct NoDerivation : Error {
  NoDerivation(const std::string& what, bool budget_exhausted)
      : Error(what), budget_exhausted(budget_exhausted) {}
  bool budget_exhausted;
};

struct ShapeError : Error {
  using Error::Error;
};

struct ModelError : Error {
  using Error::Error;
};

struct EmbeddingError : Error {
  using Error::Error;
};

struct DatasetError : Error {
  using Error::Error;
};

}  // namespace lccsem

#endif
