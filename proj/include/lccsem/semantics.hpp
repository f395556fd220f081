#ifndef LCCSEM_SEMANTICS_HPP
#define LCCSEM_SEMANTICS_HPP

#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lccsem/derivation.hpp"
#include "lccsem/embeddings.hpp"
#include "lccsem/lexicon.hpp"
#include "lccsem/search.hpp"
#include "lccsem/tensor_eval.hpp"

namespace lccsem {

// Tensor semantic types: S (scalar), V, M, C, H (ranks 0 to 4) and arrows.
class SemType {
 public:
  static SemType base(std::size_t rank);
  static SemType arrow(SemType from, SemType to);

  bool is_arrow() const { return from_ != nullptr; }
  std::size_t rank() const { return rank_; }
  const SemType& from() const { return *from_; }
  const SemType& to() const { return *to_; }

 private:
  std::size_t rank_ = 0;
  std::shared_ptr<const SemType> from_, to_;
};

// `V`, `M->M`, `(V->V)->V->V`; arrows associate to the right.
SemType parse_semtype(std::string_view text);
std::string print_semtype(const SemType& t);

// A lambda term over operation constants in which `placeholder` stands for
// the tensor of the word being translated. `rank` is the rank of that tensor.
struct Template {
  Term body;
  std::string placeholder;
  std::size_t rank;
  std::optional<SemType> type;
};

class SemanticModel {
 public:
  explicit SemanticModel(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }

  // Both check the template against its declared type by applying it to
  // probe tensors; a mismatch is a ModelError.
  void set_class(const std::string& semclass, Template t);
  void set_override(const std::string& constant, Template t);

  bool has_class(std::string_view semclass) const { return classes_.contains(semclass); }
  const Template& lookup(const LexEntry& entry) const;

  const std::map<std::string, Template, std::less<>>& classes() const { return classes_; }
  const std::map<std::string, Template, std::less<>>& overrides() const { return overrides_; }

 private:
  std::string name_;
  std::map<std::string, Template, std::less<>> classes_;
  std::map<std::string, Template, std::less<>> overrides_;
};

// tensor, additive and kronecker.
const std::vector<SemanticModel>& builtin_models();
const SemanticModel& builtin_model(std::string_view name);

// Tab-separated `semclass template [rank [type]]` lines; `@constant` in the
// first field overrides a single constant (placeholder: the constant). A
// `#base: NAME` line starts from a builtin model.
SemanticModel load_model(std::istream& in, std::string name);
SemanticModel load_model_file(const std::string& path);

// Throws ModelError naming a lexicon semclass the model does not cover.
void check_coverage(const SemanticModel& model, const Lexicon& lexicon);

// The homomorphism: every lexical constant is replaced by its template.
Term translate(const Term& t, const SemanticModel& model, const Lexicon& lexicon, bool normalize = true);

// Tensors for the word constants of `t`. Explicit `store` entries win; other
// words come from `space`, lifted to the template rank by outer powers.
TensorEnv embedding_env(const Term& t, const SemanticModel& model, const Lexicon& lexicon,
                        const EmbeddingSpace& space, const TensorEnv* store = nullptr);

struct SentenceMeaning {
  Reading reading;
  Term tensor_term;
  TensorValue value;
  std::string model;
};

SentenceMeaning interpret_reading(const Reading& reading, const Lexicon& lexicon, const SemanticModel& model,
                                  const EmbeddingSpace& space, const TensorEnv* store = nullptr);

std::vector<SentenceMeaning> interpret_sentence(const std::vector<std::string>& words, const Lexicon& lexicon,
                                                const Formula& goal, const SemanticModel& model,
                                                const EmbeddingSpace& space, const SearchBudget& budget = {},
                                                const TensorEnv* store = nullptr);

}  // namespace lccsem

#endif
