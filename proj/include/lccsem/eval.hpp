#ifndef LCCSEM_EVAL_HPP
#define LCCSEM_EVAL_HPP

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lccsem/embeddings.hpp"
#include "lccsem/tensor.hpp"

namespace lccsem {

// Flattened (Frobenius) cosine. Throws ShapeError on differing shapes and
// EmbeddingError on a zero-magnitude argument.
double cosine(const TensorValue& a, const TensorValue& b);

// Half away from zero.
double round2(double x);

// A sentence of the disambiguation task, `subj verb [obj] [and subj* does too]`.
struct Phrase {
  std::string subject;
  std::string verb;
  std::optional<std::string> object;
  std::optional<std::string> second_subject;
};

// verb_only_vector, additive, multiplicative, kronecker, then the resolved
// elliptical models mult_mult, mult_add, add_mult, add_add, kron_add, kron_mult.
const std::vector<std::string>& composition_model_names();
bool is_resolved_model(std::string_view model);
// The single-clause model a resolved model applies to each subclause.
std::string clause_model(std::string_view model);

// additive and multiplicative read a second subject as the unresolved
// sentence, which needs vectors for `and`, `does` and `too`. Resolved models
// require the second subject; kronecker requires an object.
TensorValue compose(std::string_view model, const Phrase& phrase, const EmbeddingSpace& space);

enum class SentenceKind { Intransitive, Transitive };
SentenceKind parse_sentence_kind(std::string_view s);

struct ToyRow {
  std::string label;
  Phrase phrase;
  std::vector<double> scores;  // model-major: (model 0, landmark 0), (model 0, landmark 1), ...
};

struct ToyTable {
  SentenceKind kind;
  std::vector<std::string> models;
  std::vector<std::string> landmarks;
  std::vector<ToyRow> rows;
};

// The cosine grid over toy_space(). Rows without a second subject use the
// clause model of each column.
ToyTable toy_experiment(SentenceKind kind);
std::string format_toy_table(const ToyTable& table, bool tsv);

// Average (fractional) ranks, 1-based.
std::vector<double> average_ranks(const std::vector<double>& xs);
// Pearson correlation of average ranks; nullopt when either side is constant.
// Throws std::invalid_argument on a length mismatch or fewer than 2 values.
std::optional<double> spearman_rho(const std::vector<double>& predicted, const std::vector<double>& human);

enum class GoldLabel { High, Low };

struct DatasetEntry {
  std::size_t line = 0;
  std::string subject;
  std::string verb;
  std::string landmark;
  std::optional<std::string> object;
  std::optional<std::string> second_subject;
  GoldLabel label = GoldLabel::High;
  std::optional<double> score;
};

// Tab separated with a header naming the columns subject, verb, landmark,
// second_subject, label, score, and optionally object. `-` marks an absent
// value. Throws DatasetError naming the line.
std::vector<DatasetEntry> load_dataset(std::istream& in, const std::string& name = "dataset");
std::vector<DatasetEntry> load_dataset_file(const std::string& path);

struct EntryResult {
  DatasetEntry entry;
  double cosine;
};

struct DatasetReport {
  std::string model;
  bool resolved = false;
  std::vector<EntryResult> results;
  std::optional<double> rho;
  std::size_t scored = 0;
  std::optional<double> accuracy;  // over (subject, object, verb, second subject) groups holding a HIGH and a LOW
  std::size_t groups = 0;
  std::size_t skipped = 0;
  std::size_t ignored_second_subjects = 0;
  std::vector<std::string> warnings;
};

// Entries with words missing from the space are skipped with a warning.
// Without `resolve_ellipsis` second subjects are ignored (and counted) and
// resolved models fall back to their clause model.
DatasetReport run_dataset(const std::vector<DatasetEntry>& entries, std::string_view model,
                          const EmbeddingSpace& space, bool resolve_ellipsis);
DatasetReport run_dataset(const std::string& path, std::string_view model, const EmbeddingSpace& space,
                          bool resolve_ellipsis);
std::string format_report(const DatasetReport& report, bool tsv);

}  // namespace lccsem

#endif
