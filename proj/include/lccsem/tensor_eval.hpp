#ifndef LCCSEM_TENSOR_EVAL_HPP
#define LCCSEM_TENSOR_EVAL_HPP

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "lccsem/lambda.hpp"
#include "lccsem/tensor.hpp"
#include "lccsem/term.hpp"

namespace lccsem {

using TensorEnv = std::map<std::string, TensorValue, std::less<>>;

// Operation constants of tensor programs:
//   transpose m, mat_vec m v, cube_vec c v, hcube_mat h m, mul a b
//   (alias elem_mul), add a b, outer a b, contract a b, frobenius_copy v.
const std::set<std::string, std::less<>>& operation_names();
bool is_operation(std::string_view name);

// Static pass over a β-normal closed program: the shape of its value.
// Throws ShapeError naming the offending subterm.
Shape infer_shape(const Term& program, const TensorEnv& env);

// β-normalizes, shape-checks, then computes. Constants other than
// operations are read from `env`, any number of times.
TensorValue evaluate(const Term& program, const TensorEnv& env, std::size_t fuel = default_fuel);

}  // namespace lccsem

#endif
