#ifndef LCCSEM_TENSOR_HPP
#define LCCSEM_TENSOR_HPP

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace lccsem {

using Shape = std::vector<std::size_t>;

std::string shape_string(const Shape& s);

// Dense row-major tensor of doubles. Rank 0 is a scalar.
class TensorValue {
 public:
  TensorValue() : data_(1, 0.0) {}
  TensorValue(Shape shape, std::vector<double> data);

  static TensorValue scalar(double x);
  static TensorValue vector(std::vector<double> v);
  static TensorValue matrix(std::initializer_list<std::initializer_list<double>> rows);
  static TensorValue zeros(Shape shape);

  const Shape& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return data_.size(); }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  double& at(std::initializer_list<std::size_t> index);
  double at(std::initializer_list<std::size_t> index) const;
  std::size_t offset(const std::vector<std::size_t>& index) const;

  // One label list per axis, or empty.
  const std::vector<std::vector<std::string>>& basis_labels() const { return labels_; }
  void set_basis_labels(std::vector<std::vector<std::string>> labels);

 private:
  Shape shape_;
  std::vector<double> data_;
  std::vector<std::vector<std::string>> labels_;
};

// Shape line, then the row-major values with 17 significant digits.
std::string dump(const TensorValue& t);

double max_abs_diff(const TensorValue& a, const TensorValue& b);
bool approx_equal(const TensorValue& a, const TensorValue& b, double tol = 1e-9);

// result[i,j] = m[j,i]
TensorValue transpose(const TensorValue& m);
// ×1: result[i] = Σj m[i,j] v[j]
TensorValue mat_vec(const TensorValue& m, const TensorValue& v);
// ×2: result[i,j] = Σk c[i,j,k] v[k]
TensorValue cube_vec(const TensorValue& c, const TensorValue& v);
// ×3: result[i,j] = Σk,l h[i,j,k,l] m[k,l]
TensorValue hcube_mat(const TensorValue& h, const TensorValue& m);
// ⊙ and +, any rank, equal shapes.
TensorValue elem_mul(const TensorValue& a, const TensorValue& b);
TensorValue add(const TensorValue& a, const TensorValue& b);
TensorValue scale(const TensorValue& a, double k);
// ⊗: shape(a)++shape(b); rank-0 factors are absorbed.
TensorValue outer(const TensorValue& a, const TensorValue& b);
// Σs a[...,s] b[s,...]
TensorValue contract_adjacent(const TensorValue& a, const TensorValue& b);
// Δ: v on the diagonal of a square matrix.
TensorValue frobenius_copy(const TensorValue& v);

TensorValue reshape(const TensorValue& t, Shape shape);
// result axis k is axis axes[k] of t.
TensorValue permute(const TensorValue& t, const std::vector<std::size_t>& axes);

}  // namespace lccsem

#endif
