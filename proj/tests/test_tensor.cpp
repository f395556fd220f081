#include <doctest.h>

#include <cmath>

#include "lccsem/error.hpp"
#include "lccsem/tensor.hpp"
#include "lccsem/tensor_eval.hpp"
#include "support.hpp"

using namespace lccsem;
using testing::random_dim;
using testing::random_tensor;

namespace {

TensorValue vec(std::vector<double> v) { return TensorValue::vector(std::move(v)); }

TensorValue identity(std::size_t n) {
  TensorValue m = TensorValue::zeros({n, n});
  for (std::size_t i = 0; i < n; ++i) m.at({i, i}) = 1;
  return m;
}

TensorValue eval(const char* program, const TensorEnv& env) { return evaluate(parse_term(program), env); }

}  // namespace

TEST_SUITE("tensor") {
  TEST_CASE("transpose") {
    CHECK(approx_equal(transpose(TensorValue::matrix({{1, 2}, {3, 4}})), TensorValue::matrix({{1, 3}, {2, 4}})));
    CHECK(approx_equal(transpose(identity(3)), identity(3)));
    std::mt19937_64 rng(1);
    TensorValue m = random_tensor(rng, {3, 5});
    CHECK(transpose(m).shape() == Shape{5, 3});
    CHECK(approx_equal(transpose(transpose(m)), m));
    CHECK_THROWS_AS(transpose(vec({1, 2})), ShapeError);
  }

  TEST_CASE("mat_vec") {
    CHECK(approx_equal(mat_vec(identity(3), vec({2, 5, 7})), vec({2, 5, 7})));
    CHECK(approx_equal(mat_vec(TensorValue::matrix({{1, 2}, {3, 4}}), vec({1, 1})), vec({3, 7})));
    CHECK(approx_equal(mat_vec(TensorValue::zeros({2, 3}), vec({1, 2, 3})), TensorValue::zeros({2})));
    CHECK_THROWS_AS(mat_vec(identity(3), vec({1, 2})), ShapeError);
  }

  TEST_CASE("cube_vec") {
    TensorValue sel = TensorValue::zeros({3, 3, 3});
    for (std::size_t i = 0; i < 3; ++i) sel.at({i, i, i}) = 1;
    CHECK(approx_equal(cube_vec(sel, vec({2, 3, 5})), TensorValue::matrix({{2, 0, 0}, {0, 3, 0}, {0, 0, 5}})));
    std::mt19937_64 rng(2);
    TensorValue c = random_tensor(rng, {2, 2, 2});
    CHECK(approx_equal(cube_vec(c, TensorValue::zeros({2})), TensorValue::zeros({2, 2})));
    CHECK_THROWS_AS(cube_vec(c, vec({1, 2, 3})), ShapeError);
  }

  TEST_CASE("hcube_mat") {
    TensorValue h = TensorValue::zeros({2, 3, 2, 3});
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j) h.at({i, j, i, j}) = 1;
    TensorValue m = TensorValue::matrix({{1, 2, 3}, {4, 5, 6}});
    CHECK(approx_equal(hcube_mat(h, m), m));
    CHECK(approx_equal(hcube_mat(h, TensorValue::zeros({2, 3})), TensorValue::zeros({2, 3})));
    CHECK_THROWS_AS(hcube_mat(h, identity(2)), ShapeError);
  }

  TEST_CASE("pointwise") {
    CHECK(approx_equal(elem_mul(vec({1, 2, 3}), vec({4, 5, 6})), vec({4, 10, 18})));
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
      Shape s(random_dim(rng, 1, 3));
      for (auto& d : s) d = random_dim(rng);
      TensorValue a = random_tensor(rng, s), b = random_tensor(rng, s);
      TensorValue ones = TensorValue::zeros(s);
      for (double& x : ones.data()) x = 1;
      CHECK(approx_equal(elem_mul(a, ones), a));
      CHECK(approx_equal(add(a, TensorValue::zeros(s)), a));
      CHECK(approx_equal(elem_mul(a, b), elem_mul(b, a)));
      CHECK(approx_equal(add(a, b), add(b, a)));
    }
    CHECK_THROWS_AS(add(vec({1}), vec({1, 2})), ShapeError);
  }

  TEST_CASE("outer") {
    CHECK(approx_equal(outer(vec({1, 2}), vec({3, 4})), TensorValue::matrix({{3, 4}, {6, 8}})));
    CHECK(approx_equal(outer(vec({1, 2}), TensorValue::scalar(1)), vec({1, 2})));
    std::mt19937_64 rng(4);
    for (int i = 0; i < 10; ++i) {
      TensorValue a = random_tensor(rng, {random_dim(rng), random_dim(rng)});
      TensorValue b = random_tensor(rng, {random_dim(rng)});
      Shape want = a.shape();
      want.insert(want.end(), b.shape().begin(), b.shape().end());
      CHECK(outer(a, b).shape() == want);
    }
  }

  TEST_CASE("contract_adjacent") {
    CHECK(approx_equal(contract_adjacent(vec({1, 2, 3}), vec({4, 5, 6})), TensorValue::scalar(32)));
    std::mt19937_64 rng(5);
    TensorValue a = random_tensor(rng, {3, 4}), b = random_tensor(rng, {4, 2});
    TensorValue want = TensorValue::zeros({3, 2});
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 4; ++k) want.at({i, j}) += a.at({i, k}) * b.at({k, j});
    CHECK(approx_equal(contract_adjacent(a, b), want));
    TensorValue c = random_tensor(rng, {2, 3, 4});
    CHECK(approx_equal(contract_adjacent(c, identity(4)), c));
    CHECK_THROWS_AS(contract_adjacent(a, a), ShapeError);
  }

  TEST_CASE("the table operations are adjacent contractions") {
    std::mt19937_64 rng(6);
    TensorValue m = random_tensor(rng, {3, 4}), v = random_tensor(rng, {4});
    CHECK(approx_equal(mat_vec(m, v), contract_adjacent(m, v)));
    TensorValue c = random_tensor(rng, {2, 3, 4});
    CHECK(approx_equal(cube_vec(c, v), contract_adjacent(c, v)));
    TensorValue h = random_tensor(rng, {2, 3, 4, 2}), m2 = random_tensor(rng, {4, 2});
    TensorValue flat = contract_adjacent(reshape(h, {2, 3, 8}), reshape(m2, {8}));
    CHECK(approx_equal(hcube_mat(h, m2), flat));
    TensorValue p = permute(c, {2, 0, 1});
    CHECK(p.shape() == Shape{4, 2, 3});
    CHECK(p.at({3, 1, 2}) == c.at({1, 2, 3}));
  }

  TEST_CASE("frobenius_copy") {
    CHECK(approx_equal(frobenius_copy(vec({2, 7})), TensorValue::matrix({{2, 0}, {0, 7}})));
    CHECK(approx_equal(frobenius_copy(TensorValue::zeros({3})), TensorValue::zeros({3, 3})));
    std::mt19937_64 rng(7);
    for (int i = 0; i < 10; ++i) {
      std::size_t n = random_dim(rng);
      TensorValue v = random_tensor(rng, {n}), w = random_tensor(rng, {n});
      TensorValue d = frobenius_copy(v);
      double trace = 0, sum = 0;
      for (std::size_t k = 0; k < n; ++k) {
        trace += d.at({k, k});
        sum += v.at({k});
      }
      CHECK(trace == doctest::Approx(sum).epsilon(1e-12));
      CHECK(approx_equal(mat_vec(d, w), elem_mul(v, w)));
    }
    CHECK_THROWS_AS(frobenius_copy(identity(2)), ShapeError);
  }

  TEST_CASE("bilinearity") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 20; ++i) {
      std::size_t n = random_dim(rng), k = random_dim(rng);
      TensorValue m = random_tensor(rng, {n, k}), u = random_tensor(rng, {k}), v = random_tensor(rng, {k});
      double a = std::uniform_real_distribution<double>(-2, 2)(rng), b = std::uniform_real_distribution<double>(-2, 2)(rng);
      CHECK(approx_equal(mat_vec(m, add(scale(u, a), scale(v, b))),
                         add(scale(mat_vec(m, u), a), scale(mat_vec(m, v), b))));
    }
  }

  TEST_CASE("dump") {
    CHECK(dump(TensorValue::matrix({{1, 0.5}, {-2, 0.1}})) == "shape 2 2\n1 0.5 -2 0.10000000000000001\n");
    CHECK(dump(TensorValue::scalar(3)) == "shape\n3\n");
  }
}

TEST_SUITE("tensor_eval") {
  TEST_CASE("ellipsis pipeline") {
    std::mt19937_64 rng(9);
    TensorEnv env{{"drinks", random_tensor(rng, {2, 2})},
                  {"alice", random_tensor(rng, {2})},
                  {"bob", random_tensor(rng, {2})}};
    TensorValue v = eval("mul (mat_vec drinks alice) (mat_vec drinks bob)", env);
    CHECK(approx_equal(v, elem_mul(mat_vec(env["drinks"], env["alice"]), mat_vec(env["drinks"], env["bob"]))));
    TensorValue redex = eval("(\\f. mul (f alice) (f bob)) (\\v. mat_vec drinks v)", env);
    CHECK(approx_equal(redex, v));
  }

  TEST_CASE("shape errors name the subterm") {
    TensorEnv env{{"m", identity(2)}, {"v", vec({1, 2, 3})}};
    try {
      eval("add (mat_vec m v) v", env);
      FAIL("expected ShapeError");
    } catch (const ShapeError& e) {
      CHECK(std::string(e.what()).find("mat_vec m v") != std::string::npos);
    }
    CHECK_THROWS_AS(eval("mat_vec m", env), ShapeError);
    CHECK_THROWS_AS(eval("mat_vec m w", env), ModelError);
    CHECK_THROWS_AS(eval("\\x. x", env), ShapeError);
  }

  TEST_CASE("operation signature") {
    for (const char* op : {"transpose", "mat_vec", "cube_vec", "hcube_mat", "elem_mul", "mul", "add", "outer",
                           "frobenius_copy", "contract"})
      CHECK(is_operation(op));
    CHECK_FALSE(is_operation("alice"));
    TensorEnv env{{"a", vec({1, 2})}, {"b", vec({3, 4})}};
    CHECK(approx_equal(eval("transpose (outer a b)", env), TensorValue::matrix({{3, 6}, {4, 8}})));
    CHECK(approx_equal(eval("frobenius_copy (elem_mul a b)", env), TensorValue::matrix({{3, 0}, {0, 8}})));
    CHECK(approx_equal(eval("contract a b", env), TensorValue::scalar(11)));
    CHECK(infer_shape(parse_term("outer a (outer a b)"), env) == Shape{2, 2, 2});
  }
}
