#include "lccsem/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>

#include "lccsem/error.hpp"

namespace lccsem {

namespace {

std::size_t volume(const Shape& s) {
  return std::accumulate(s.begin(), s.end(), std::size_t{1}, std::multiplies<>());
}

void require_rank(const TensorValue& t, std::size_t rank, const char* op, const char* what) {
  if (t.rank() != rank)
    throw ShapeError(std::string(op) + ": " + what + " must have rank " + std::to_string(rank) + ", got shape " +
                     shape_string(t.shape()));
}

void require_same(const TensorValue& a, const TensorValue& b, const char* op) {
  if (a.shape() != b.shape())
    throw ShapeError(std::string(op) + ": shapes " + shape_string(a.shape()) + " and " + shape_string(b.shape()) +
                     " differ");
}

}  // namespace

std::string shape_string(const Shape& s) {
  if (s.empty()) return "()";
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "x" : "") + std::to_string(s[i]);
  return out;
}

TensorValue::TensorValue(Shape shape, std::vector<double> data) : shape_(std::move(shape)), data_(std::move(data)) {
  if (data_.size() != volume(shape_))
    throw ShapeError("tensor of shape " + shape_string(shape_) + " needs " + std::to_string(volume(shape_)) +
                     " values, got " + std::to_string(data_.size()));
}

TensorValue TensorValue::scalar(double x) { return TensorValue({}, {x}); }

TensorValue TensorValue::vector(std::vector<double> v) {
  Shape s{v.size()};
  return TensorValue(std::move(s), std::move(v));
}

TensorValue TensorValue::matrix(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<double> data;
  std::size_t cols = rows.size() ? rows.begin()->size() : 0;
  for (const auto& r : rows) {
    if (r.size() != cols) throw ShapeError("ragged matrix literal");
    data.insert(data.end(), r.begin(), r.end());
  }
  return TensorValue({rows.size(), cols}, std::move(data));
}

TensorValue TensorValue::zeros(Shape shape) {
  std::size_t n = volume(shape);
  return TensorValue(std::move(shape), std::vector<double>(n, 0.0));
}

std::size_t TensorValue::offset(const std::vector<std::size_t>& index) const {
  if (index.size() != shape_.size()) throw ShapeError("index of rank " + std::to_string(index.size()) + " into shape " + shape_string(shape_));
  std::size_t off = 0;
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (index[k] >= shape_[k]) throw ShapeError("index out of range for shape " + shape_string(shape_));
    off = off * shape_[k] + index[k];
  }
  return off;
}

double& TensorValue::at(std::initializer_list<std::size_t> index) { return data_[offset(index)]; }
double TensorValue::at(std::initializer_list<std::size_t> index) const { return data_[offset(index)]; }

void TensorValue::set_basis_labels(std::vector<std::vector<std::string>> labels) {
  if (!labels.empty()) {
    if (labels.size() != rank()) throw ShapeError("one label list per axis expected");
    for (std::size_t k = 0; k < labels.size(); ++k)
      if (labels[k].size() != shape_[k]) throw ShapeError("label count does not match axis " + std::to_string(k));
  }
  labels_ = std::move(labels);
}

std::string dump(const TensorValue& t) {
  std::string out = "shape";
  for (std::size_t d : t.shape()) out += " " + std::to_string(d);
  out += '\n';
  char buf[40];
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", t.data()[i]);
    out += (i ? " " : "") + std::string(buf);
  }
  out += '\n';
  return out;
}

double max_abs_diff(const TensorValue& a, const TensorValue& b) {
  require_same(a, b, "compare");
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

bool approx_equal(const TensorValue& a, const TensorValue& b, double tol) {
  return a.shape() == b.shape() && max_abs_diff(a, b) <= tol;
}

TensorValue transpose(const TensorValue& m) {
  require_rank(m, 2, "transpose", "argument");
  std::size_t r = m.shape()[0], c = m.shape()[1];
  TensorValue out = TensorValue::zeros({c, r});
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < r; ++j) out.data()[i * r + j] = m.data()[j * c + i];
  return out;
}

TensorValue contract_adjacent(const TensorValue& a, const TensorValue& b) {
  if (a.rank() == 0 || b.rank() == 0) throw ShapeError("contract: both arguments need rank at least 1");
  std::size_t s = a.shape().back();
  if (b.shape().front() != s)
    throw ShapeError("contract: last axis of " + shape_string(a.shape()) + " does not match first axis of " +
                     shape_string(b.shape()));
  Shape shape(a.shape().begin(), a.shape().end() - 1);
  shape.insert(shape.end(), b.shape().begin() + 1, b.shape().end());
  std::size_t outer_n = a.size() / s, inner_n = b.size() / s;
  TensorValue out = TensorValue::zeros(shape);
  for (std::size_t i = 0; i < outer_n; ++i)
    for (std::size_t k = 0; k < s; ++k) {
      double x = a.data()[i * s + k];
      if (x == 0) continue;
      for (std::size_t j = 0; j < inner_n; ++j) out.data()[i * inner_n + j] += x * b.data()[k * inner_n + j];
    }
  return out;
}

TensorValue mat_vec(const TensorValue& m, const TensorValue& v) {
  require_rank(m, 2, "mat_vec", "first argument");
  require_rank(v, 1, "mat_vec", "second argument");
  if (m.shape()[1] != v.shape()[0])
    throw ShapeError("mat_vec: matrix " + shape_string(m.shape()) + " applied to vector " + shape_string(v.shape()));
  return contract_adjacent(m, v);
}

TensorValue cube_vec(const TensorValue& c, const TensorValue& v) {
  require_rank(c, 3, "cube_vec", "first argument");
  require_rank(v, 1, "cube_vec", "second argument");
  if (c.shape()[2] != v.shape()[0])
    throw ShapeError("cube_vec: cube " + shape_string(c.shape()) + " applied to vector " + shape_string(v.shape()));
  return contract_adjacent(c, v);
}

TensorValue hcube_mat(const TensorValue& h, const TensorValue& m) {
  require_rank(h, 4, "hcube_mat", "first argument");
  require_rank(m, 2, "hcube_mat", "second argument");
  if (h.shape()[2] != m.shape()[0] || h.shape()[3] != m.shape()[1])
    throw ShapeError("hcube_mat: hypercube " + shape_string(h.shape()) + " applied to matrix " + shape_string(m.shape()));
  std::size_t k = m.size();
  TensorValue flat = reshape(h, {h.shape()[0], h.shape()[1], k});
  return contract_adjacent(flat, reshape(m, {k}));
}

TensorValue elem_mul(const TensorValue& a, const TensorValue& b) {
  require_same(a, b, "mul");
  TensorValue out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] *= b.data()[i];
  return out;
}

TensorValue add(const TensorValue& a, const TensorValue& b) {
  require_same(a, b, "add");
  TensorValue out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] += b.data()[i];
  return out;
}

TensorValue scale(const TensorValue& a, double k) {
  TensorValue out = a;
  for (double& x : out.data()) x *= k;
  return out;
}

TensorValue outer(const TensorValue& a, const TensorValue& b) {
  Shape shape = a.shape();
  shape.insert(shape.end(), b.shape().begin(), b.shape().end());
  TensorValue out = TensorValue::zeros(shape);
  std::size_t n = b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) out.data()[i * n + j] = a.data()[i] * b.data()[j];
  return out;
}

TensorValue frobenius_copy(const TensorValue& v) {
  require_rank(v, 1, "frobenius_copy", "argument");
  std::size_t n = v.shape()[0];
  TensorValue out = TensorValue::zeros({n, n});
  for (std::size_t i = 0; i < n; ++i) out.data()[i * n + i] = v.data()[i];
  return out;
}

TensorValue reshape(const TensorValue& t, Shape shape) {
  if (volume(shape) != t.size())
    throw ShapeError("reshape: cannot view " + shape_string(t.shape()) + " as " + shape_string(shape));
  return TensorValue(std::move(shape), t.data());
}

TensorValue permute(const TensorValue& t, const std::vector<std::size_t>& axes) {
  std::size_t r = t.rank();
  std::vector<bool> seen(r, false);
  if (axes.size() != r) throw ShapeError("permute: expected " + std::to_string(r) + " axes");
  for (std::size_t a : axes) {
    if (a >= r || seen[a]) throw ShapeError("permute: invalid axis permutation");
    seen[a] = true;
  }
  Shape shape(r);
  for (std::size_t k = 0; k < r; ++k) shape[k] = t.shape()[axes[k]];
  std::vector<std::size_t> stride(r, 1);
  for (std::size_t k = r; k-- > 1;) stride[k - 1] = stride[k] * t.shape()[k];
  TensorValue out = TensorValue::zeros(shape);
  std::vector<std::size_t> idx(r, 0);
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    std::size_t src = 0;
    for (std::size_t k = 0; k < r; ++k) src += idx[k] * stride[axes[k]];
    out.data()[flat] = t.data()[src];
    for (std::size_t k = r; k-- > 0;) {
      if (++idx[k] < shape[k]) break;
      idx[k] = 0;
    }
  }
  return out;
}

}  // namespace lccsem
