#include "doctest.h"

#include <cmath>
#include <random>

#include "kg/error.hpp"
#include "kg/tensor.hpp"

using namespace kg;

namespace {

Tensor random_tensor(std::mt19937& rng, std::vector<std::size_t> dims) {
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  Tensor t = Tensor::zeros(dims);
  for (double& v : t.data()) v = dist(rng);
  return t;
}

}  // namespace

TEST_SUITE("tensor") {

TEST_CASE("lp norms") {
  CHECK(lp_norm(Tensor::vector({3, 4}), 2) == doctest::Approx(5).epsilon(1e-12));
  CHECK(lp_norm(Tensor::vector({1, -1, 1}), 1) == doctest::Approx(3).epsilon(1e-12));
  CHECK(lp_norm(Tensor::vector({0, 0, 0}), 2.5) == 0);
  CHECK_THROWS_AS(lp_norm(Tensor::vector({1}), 0.5), Error);
  CHECK_THROWS_AS(lp_norm(Tensor::identity(2), 2), Error);
}

TEST_CASE("lpq norm over columns") {
  Tensor x = Tensor::matrix(2, 2, {1, 2, 3, 4});
  CHECK(lpq_norm(x, 2, 2) == doctest::Approx(std::sqrt(30.0)).epsilon(1e-12));
  CHECK(lpq_norm(x, 1, 1) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(lpq_norm(x, 2, 1) ==
        doctest::Approx(std::sqrt(10.0) + std::sqrt(20.0)).epsilon(1e-12));
}

TEST_CASE("matmul on matrices") {
  Tensor m = Tensor::matrix(3, 2, {1, 2, 3, 4, 5, 6});
  CHECK(matmul(Tensor::identity(3), m) == m);

  Tensor row = Tensor::matrix(1, 2, {1, 2});
  Tensor col = Tensor::matrix(2, 1, {1, 2});
  Tensor prod = matmul(row, col);
  CHECK(prod.dims() == std::vector<std::size_t>{1, 1});
  CHECK(prod.data()[0] == doctest::Approx(5).epsilon(1e-12));

  CHECK_THROWS_AS(matmul(Tensor::matrix(2, 3, std::vector<double>(6, 1.0)),
                         Tensor::matrix(2, 3, std::vector<double>(6, 1.0))),
                  Error);
}

TEST_CASE("matmul matches the triple loop oracle") {
  std::mt19937 rng(3);
  Tensor a = random_tensor(rng, {2, 3});
  Tensor b = random_tensor(rng, {3, 4});
  Tensor c = matmul(a, b);
  REQUIRE(c.dims() == std::vector<std::size_t>{2, 4});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 4; ++k) {
      double sum = 0;
      for (std::size_t j = 0; j < 3; ++j) sum += a.at({i, j}) * b.at({j, k});
      CHECK(c.at({i, k}) == doctest::Approx(sum).epsilon(1e-12));
    }
}

TEST_CASE("matmul generalizes to higher order") {
  std::mt19937 rng(4);
  Tensor a = random_tensor(rng, {2, 2, 3});
  Tensor b = random_tensor(rng, {3, 2});
  Tensor c = matmul(a, b);
  REQUIRE(c.dims() == std::vector<std::size_t>{2, 2, 2});
  double sum = 0;
  for (std::size_t j = 0; j < 3; ++j) sum += a.at({1, 0, j}) * b.at({j, 1});
  CHECK(c.at({1, 0, 1}) == doctest::Approx(sum).epsilon(1e-12));
}

TEST_CASE("hadamard") {
  CHECK(hadamard(Tensor::vector({1, 2}), Tensor::vector({3, 4})) ==
        Tensor::vector({3, 8}));
  Tensor x = Tensor::matrix(2, 2, {1, -2, 3, 0.5});
  CHECK(hadamard(x, Tensor::matrix(2, 2, {1, 1, 1, 1})) == x);
  Tensor z = Tensor::zeros({2, 2});
  CHECK(hadamard(x, z) == z);
  CHECK_THROWS_AS(hadamard(Tensor::vector({1}), Tensor::vector({1, 2})), Error);
}

TEST_CASE("tensor product shapes and values") {
  std::mt19937 rng(5);
  Tensor a = random_tensor(rng, {2, 3});
  Tensor b = random_tensor(rng, {3, 4, 5});
  Tensor p = tensor_product(a, b);
  CHECK(p.dims() == std::vector<std::size_t>{2, 3, 3, 4, 5});
  CHECK(p.at({1, 2, 0, 3, 4}) ==
        doctest::Approx(a.at({1, 2}) * b.at({0, 3, 4})).epsilon(1e-12));

  CHECK(tensor_product(Tensor::vector({1, 2}), Tensor::vector({3, 4})) ==
        Tensor::matrix(2, 2, {3, 4, 6, 8}));

  Tensor one = Tensor::vector({1});
  Tensor v = Tensor::vector({7, 8});
  CHECK(tensor_product(one, v).data() == v.data());
}

TEST_CASE("tensor product contracts to product of sums") {
  std::mt19937 rng(6);
  Tensor a = random_tensor(rng, {2, 3});
  Tensor b = random_tensor(rng, {4});
  double sa = 0, sb = 0;
  for (double v : a.data()) sa += v;
  for (double v : b.data()) sb += v;
  Tensor p = tensor_product(a, b);
  double total = 0;
  for (double v : p.data()) total += v;
  CHECK(total == doctest::Approx(sa * sb).epsilon(1e-12));
}

TEST_CASE("bilinearity of hadamard and tensor product") {
  std::mt19937 rng(7);
  Tensor x = random_tensor(rng, {3}), y = random_tensor(rng, {3});
  Tensor z = random_tensor(rng, {3});
  double alpha = 1.7;
  Tensor lhs = Tensor::vector({0, 0, 0});
  for (std::size_t i = 0; i < 3; ++i)
    lhs.data()[i] = alpha * x.data()[i] + y.data()[i];
  Tensor hz = hadamard(lhs, z);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(hz.data()[i] == doctest::Approx(alpha * hadamard(x, z).data()[i] +
                                          hadamard(y, z).data()[i])
                              .epsilon(1e-12));
  Tensor tz = tensor_product(lhs, z);
  Tensor tx = tensor_product(x, z), ty = tensor_product(y, z);
  for (std::size_t i = 0; i < tz.size(); ++i)
    CHECK(tz.data()[i] ==
          doctest::Approx(alpha * tx.data()[i] + ty.data()[i]).epsilon(1e-12));
}

TEST_CASE("n-mode product") {
  std::mt19937 rng(8);
  Tensor x = random_tensor(rng, {2, 3, 4});
  Tensor y = random_tensor(rng, {5, 3});
  Tensor r = n_mode_product(x, y, 2);
  REQUIRE(r.dims() == std::vector<std::size_t>{2, 5, 4});
  double sum = 0;
  for (std::size_t k = 0; k < 3; ++k) sum += x.at({1, k, 2}) * y.at({3, k});
  CHECK(r.at({1, 3, 2}) == doctest::Approx(sum).epsilon(1e-12));

  CHECK(n_mode_product(x, Tensor::identity(3), 2) == x);

  Tensor flat = n_mode_product(x, Tensor::matrix(1, 3, {1, 1, 1}), 2);
  CHECK(flat.dims() == std::vector<std::size_t>{2, 1, 4});
  double s2 = 0;
  for (std::size_t k = 0; k < 3; ++k) s2 += x.at({0, k, 1});
  CHECK(flat.at({0, 0, 1}) == doctest::Approx(s2).epsilon(1e-12));

  CHECK_THROWS_AS(n_mode_product(x, Tensor::matrix(2, 2, {1, 0, 0, 1}), 2), Error);
}

TEST_CASE("circular correlation") {
  Tensor x = Tensor::vector({1, 2, 3, 4, 5});
  Tensor y = Tensor::vector({10, 20, 30, 40, 50});
  Tensor r = circular_correlation(x, y);
  double dot = 0;
  for (std::size_t i = 0; i < 5; ++i) dot += x.data()[i] * y.data()[i];
  CHECK(r.data()[0] == doctest::Approx(dot).epsilon(1e-12));
  CHECK(r.data()[4] ==
        doctest::Approx(1 * 50 + 2 * 10 + 3 * 20 + 4 * 30 + 5 * 40).epsilon(1e-12));

  CHECK(circular_correlation(Tensor::vector({1, 0}), Tensor::vector({2, 3})) ==
        Tensor::vector({2, 3}));
  CHECK(circular_correlation(Tensor::vector({1, 1}), Tensor::vector({1, 1})) ==
        Tensor::vector({2, 2}));
  CHECK_THROWS_AS(circular_correlation(x, Tensor::vector({1})), Error);
}

}  // TEST_SUITE
