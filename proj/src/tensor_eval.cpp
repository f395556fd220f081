#include "lccsem/tensor_eval.hpp"

#include <algorithm>
#include <vector>

#include "lccsem/error.hpp"

namespace lccsem {

namespace {

struct Op {
  std::string_view name;
  std::size_t arity;
};

constexpr Op ops[] = {
    {"transpose", 1}, {"mat_vec", 2}, {"cube_vec", 2}, {"hcube_mat", 2}, {"mul", 2},
    {"elem_mul", 2},  {"add", 2},     {"outer", 2},    {"contract", 2},  {"frobenius_copy", 1},
};

const Op* find_op(std::string_view name) {
  for (const Op& op : ops)
    if (op.name == name) return &op;
  return nullptr;
}

// Splits an application spine into head and arguments.
const Term& spine(const Term& t, std::vector<const Term*>& args) {
  const Term* head = &t;
  while (head->is(Term::Kind::App)) {
    args.push_back(&head->arg());
    head = &head->fun();
  }
  std::reverse(args.begin(), args.end());
  return *head;
}

[[noreturn]] void bad(const Term& t, const std::string& what) {
  throw ShapeError(what + " in `" + print_term(t) + "`");
}

Shape op_shape(const Term& t, std::string_view op, const std::vector<Shape>& a) {
  auto rank = [&](std::size_t k, std::size_t r) {
    if (a[k].size() != r)
      bad(t, std::string(op) + " expects argument " + std::to_string(k + 1) + " of rank " + std::to_string(r) +
                 ", got " + shape_string(a[k]));
  };
  if (op == "transpose") {
    rank(0, 2);
    return {a[0][1], a[0][0]};
  }
  if (op == "mat_vec" || op == "cube_vec") {
    rank(0, op == "mat_vec" ? 2 : 3);
    rank(1, 1);
    if (a[0].back() != a[1][0]) bad(t, "shape mismatch " + shape_string(a[0]) + " against " + shape_string(a[1]));
    return Shape(a[0].begin(), a[0].end() - 1);
  }
  if (op == "hcube_mat") {
    rank(0, 4);
    rank(1, 2);
    if (a[0][2] != a[1][0] || a[0][3] != a[1][1])
      bad(t, "shape mismatch " + shape_string(a[0]) + " against " + shape_string(a[1]));
    return {a[0][0], a[0][1]};
  }
  if (op == "mul" || op == "elem_mul" || op == "add") {
    if (a[0] != a[1]) bad(t, "shape mismatch " + shape_string(a[0]) + " against " + shape_string(a[1]));
    return a[0];
  }
  if (op == "outer") {
    Shape s = a[0];
    s.insert(s.end(), a[1].begin(), a[1].end());
    return s;
  }
  if (op == "contract") {
    if (a[0].empty() || a[1].empty() || a[0].back() != a[1].front())
      bad(t, "shape mismatch " + shape_string(a[0]) + " against " + shape_string(a[1]));
    Shape s(a[0].begin(), a[0].end() - 1);
    s.insert(s.end(), a[1].begin() + 1, a[1].end());
    return s;
  }
  rank(0, 1);
  return {a[0][0], a[0][0]};
}

TensorValue op_apply(std::string_view op, const std::vector<TensorValue>& a) {
  if (op == "transpose") return transpose(a[0]);
  if (op == "mat_vec") return mat_vec(a[0], a[1]);
  if (op == "cube_vec") return cube_vec(a[0], a[1]);
  if (op == "hcube_mat") return hcube_mat(a[0], a[1]);
  if (op == "mul" || op == "elem_mul") return elem_mul(a[0], a[1]);
  if (op == "add") return add(a[0], a[1]);
  if (op == "outer") return outer(a[0], a[1]);
  if (op == "contract") return contract_adjacent(a[0], a[1]);
  return frobenius_copy(a[0]);
}

template <class Leaf, class Apply>
auto walk(const Term& t, const TensorEnv& env, Leaf leaf, Apply apply) -> decltype(leaf(env.begin()->second)) {
  switch (t.kind()) {
    case Term::Kind::Var:
      bad(t, "free variable '" + t.name() + "'");
    case Term::Kind::Abs:
      bad(t, "function value where a tensor is expected");
    case Term::Kind::Pair:
    case Term::Kind::Proj1:
    case Term::Kind::Proj2:
      bad(t, "pairs have no tensor value");
    default:
      break;
  }
  std::vector<const Term*> args;
  const Term& head = spine(t, args);
  if (!head.is(Term::Kind::Const)) bad(t, "application of a non-operation");
  if (const Op* op = find_op(head.name())) {
    if (args.size() != op->arity)
      bad(t, std::string(op->name) + " takes " + std::to_string(op->arity) + " argument(s), given " +
                 std::to_string(args.size()));
    std::vector<decltype(leaf(env.begin()->second))> values;
    for (const Term* a : args) values.push_back(walk(*a, env, leaf, apply));
    return apply(t, op->name, values);
  }
  if (!args.empty()) bad(t, "'" + head.name() + "' is a tensor, not an operation");
  auto it = env.find(head.name());
  if (it == env.end()) throw ModelError("no tensor for constant '" + head.name() + "'");
  return leaf(it->second);
}

}  // namespace

const std::set<std::string, std::less<>>& operation_names() {
  static const std::set<std::string, std::less<>> names = [] {
    std::set<std::string, std::less<>> s;
    for (const Op& op : ops) s.emplace(op.name);
    return s;
  }();
  return names;
}

bool is_operation(std::string_view name) { return find_op(name) != nullptr; }

Shape infer_shape(const Term& program, const TensorEnv& env) {
  return walk(
      program, env, [](const TensorValue& v) { return v.shape(); },
      [](const Term& t, std::string_view op, const std::vector<Shape>& a) { return op_shape(t, op, a); });
}

TensorValue evaluate(const Term& program, const TensorEnv& env, std::size_t fuel) {
  Term normal = beta_normalize(program, fuel);
  infer_shape(normal, env);
  return walk(
      normal, env, [](const TensorValue& v) { return v; },
      [](const Term&, std::string_view op, const std::vector<TensorValue>& a) { return op_apply(op, a); });
}

}  // namespace lccsem
