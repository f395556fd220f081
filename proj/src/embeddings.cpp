#include "lccsem/embeddings.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include "lccsem/error.hpp"

namespace lccsem {

namespace {

std::uint32_t swap32(std::uint32_t x) {
  return (x >> 24) | ((x >> 8) & 0xff00u) | ((x << 8) & 0xff0000u) | (x << 24);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

double parse_number(std::string_view field, std::size_t line) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw EmbeddingError("line " + std::to_string(line) + ": non-numeric field '" + std::string(field) + "'");
  return v;
}

std::size_t parse_count(std::string_view field, const std::string& what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || v == 0)
    throw EmbeddingError("bad " + what + " '" + std::string(field) + "'");
  return v;
}

void store(EmbeddingSpace& space, std::string word, std::vector<double> values, std::vector<std::string>* warnings,
           const std::string& where) {
  std::string key = lower(word);
  if (!space.add(word, std::move(values)) && warnings)
    warnings->push_back(where + ": duplicate word '" + key + "', keeping the last vector");
}

EmbeddingSpace load_text(std::istream& in, std::vector<std::string>* warnings) {
  std::size_t dim = 0;
  std::vector<std::string> labels;
  std::vector<std::pair<std::size_t, std::pair<std::string, std::vector<double>>>> rows;
  std::string line;
  std::size_t number = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string word;
    if (!(fields >> word)) continue;
    if (header && word.rfind("dim=", 0) == 0) {
      dim = parse_count(std::string_view(word).substr(4), "dimension");
      continue;
    }
    if (header && word.rfind("basis=", 0) == 0) {
      labels.push_back(word.substr(6));
      for (std::string l; fields >> l;) labels.push_back(l);
      continue;
    }
    header = false;
    std::vector<double> values;
    for (std::string f; fields >> f;) values.push_back(parse_number(f, number));
    if (values.empty()) throw EmbeddingError("line " + std::to_string(number) + ": no values for '" + word + "'");
    if (dim == 0) dim = values.size();
    if (values.size() != dim)
      throw EmbeddingError("line " + std::to_string(number) + ": expected " + std::to_string(dim) + " values, got " +
                           std::to_string(values.size()));
    rows.push_back({number, {std::move(word), std::move(values)}});
  }
  if (!labels.empty() && dim != 0 && labels.size() != dim)
    throw EmbeddingError("basis has " + std::to_string(labels.size()) + " labels for dimension " + std::to_string(dim));
  EmbeddingSpace space(dim, labels);
  for (auto& [n, row] : rows) store(space, std::move(row.first), std::move(row.second), warnings, "line " + std::to_string(n));
  return space;
}

EmbeddingSpace load_binary(std::istream& in, std::vector<std::string>* warnings) {
  std::string header;
  if (!std::getline(in, header)) throw EmbeddingError("binary space: missing header");
  std::istringstream hs(header);
  std::string vs, ds;
  if (!(hs >> vs >> ds)) throw EmbeddingError("binary space: header must be 'COUNT DIM'");
  std::size_t count = parse_count(vs, "word count"), dim = parse_count(ds, "dimension");
  EmbeddingSpace space(dim);
  std::vector<char> buf(dim * 4);
  for (std::size_t r = 0; r < count; ++r) {
    std::string word;
    int c;
    while ((c = in.get()) != EOF && std::isspace(c)) {
    }
    while (c != EOF && c != ' ') {
      word += static_cast<char>(c);
      c = in.get();
    }
    if (word.empty() || c == EOF) throw EmbeddingError("binary space: truncated at record " + std::to_string(r + 1));
    if (!in.read(buf.data(), static_cast<std::streamsize>(buf.size())))
      throw EmbeddingError("binary space: truncated vector for '" + word + "'");
    std::vector<double> values(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      std::uint32_t bits;
      std::memcpy(&bits, buf.data() + 4 * k, 4);
      if constexpr (std::endian::native == std::endian::big) bits = swap32(bits);
      values[k] = std::bit_cast<float>(bits);
    }
    store(space, std::move(word), std::move(values), warnings, "record " + std::to_string(r + 1));
  }
  return space;
}

}  // namespace

EmbeddingSpace::EmbeddingSpace(std::size_t dimension, std::vector<std::string> basis_labels)
    : dimension_(dimension), labels_(std::move(basis_labels)) {}

bool EmbeddingSpace::contains(std::string_view word) const { return vectors_.contains(lower(std::string(word))); }

const std::vector<double>& EmbeddingSpace::vector(std::string_view word) const {
  auto it = vectors_.find(lower(std::string(word)));
  if (it == vectors_.end()) throw EmbeddingError("no embedding for word '" + std::string(word) + "'");
  return it->second;
}

TensorValue EmbeddingSpace::tensor(std::string_view word) const {
  TensorValue t = TensorValue::vector(vector(word));
  if (!labels_.empty()) t.set_basis_labels({labels_});
  return t;
}

bool EmbeddingSpace::add(std::string word, std::vector<double> values) {
  if (dimension_ == 0) dimension_ = values.size();
  if (values.size() != dimension_)
    throw EmbeddingError("vector for '" + word + "' has " + std::to_string(values.size()) + " values, expected " +
                         std::to_string(dimension_));
  word = lower(std::move(word));
  auto [it, fresh] = vectors_.insert_or_assign(word, std::move(values));
  if (fresh) words_.push_back(word);
  return fresh;
}

bool EmbeddingSpace::operator==(const EmbeddingSpace& other) const {
  return dimension_ == other.dimension_ && labels_ == other.labels_ && words_ == other.words_ &&
         vectors_ == other.vectors_;
}

const EmbeddingSpace& toy_space() {
  static const EmbeddingSpace space = [] {
    EmbeddingSpace s(6, {"human", "painting", "army", "weapon", "marathon", "election"});
    s.add("man", {2, 3, 4, 2, 4, 4});
    s.add("painter", {3, 8, 1, 3, 1, 1});
    s.add("warrior", {4, 1, 2, 9, 1, 0});
    s.add("sword", {2, 3, 9, 2, 0, 0});
    s.add("picture", {1, 20, 0, 1, 1, 1});
    s.add("governor", {7, 1, 1, 3, 1, 9});
    s.add("athlete", {6, 2, 0, 1, 9, 1});
    s.add("draw", {4, 10, 9, 11, 2, 3});
    s.add("pull", {7, 2, 10, 15, 1, 1});
    s.add("depict", {3, 15, 2, 2, 1, 2});
    s.add("run", {4, 0, 2, 1, 8, 7});
    s.add("race", {8, 0, 0, 3, 10, 3});
    s.add("stand", {5, 1, 0, 1, 2, 11});
    return s;
  }();
  return space;
}

EmbeddingSpace load_space(std::istream& in, SpaceFormat format, std::vector<std::string>* warnings) {
  return format == SpaceFormat::Text ? load_text(in, warnings) : load_binary(in, warnings);
}

EmbeddingSpace load_space_file(const std::string& path, SpaceFormat format, std::vector<std::string>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw EmbeddingError("cannot open space file '" + path + "'");
  return load_space(in, format, warnings);
}

void save_space(std::ostream& out, const EmbeddingSpace& space) {
  out << "dim=" << space.dimension() << '\n';
  if (!space.basis_labels().empty()) {
    out << "basis=";
    for (std::size_t i = 0; i < space.basis_labels().size(); ++i) out << (i ? " " : "") << space.basis_labels()[i];
    out << '\n';
  }
  char buf[40];
  for (const auto& w : space.words()) {
    out << w;
    for (double v : space.vector(w)) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << ' ' << buf;
    }
    out << '\n';
  }
}

void save_space_binary(std::ostream& out, const EmbeddingSpace& space) {
  out << space.size() << ' ' << space.dimension() << '\n';
  for (const auto& w : space.words()) {
    out << w << ' ';
    for (double v : space.vector(w)) {
      std::uint32_t bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
      if constexpr (std::endian::native == std::endian::big) bits = swap32(bits);
      char b[4];
      std::memcpy(b, &bits, 4);
      out.write(b, 4);
    }
    out << '\n';
  }
}

EmbeddingSpace random_space(const std::vector<std::string>& words, std::size_t dimension, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  EmbeddingSpace space(dimension);
  for (const auto& w : words) {
    std::vector<double> v(dimension);
    for (double& x : v) x = dist(rng);
    space.add(w, std::move(v));
  }
  return space;
}

}  // namespace lccsem
