#pragma once

#include <cstddef>
#include <vector>

namespace kg {

// Dense real tensor, row-major flat storage. Operations return copies.
class Tensor {
public:
  Tensor() = default;
  Tensor(std::vector<std::size_t> dims, std::vector<double> data);
  static Tensor zeros(std::vector<std::size_t> dims);
  static Tensor vector(std::vector<double> data);
  static Tensor matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  static Tensor identity(std::size_t n);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t order() const { return dims_.size(); }
  std::size_t size() const { return data_.size(); }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  double& at(const std::vector<std::size_t>& index);
  double at(const std::vector<std::size_t>& index) const;

  bool operator==(const Tensor&) const = default;

private:
  std::vector<std::size_t> dims_;
  std::vector<double> data_;
};

// (Σ|x_i|^p)^(1/p); requires order-1 input and p ≥ 1.
double lp_norm(const Tensor& x, double p);

// (Σ_j (Σ_i |X_ij|^p)^(q/p))^(1/q) over a matrix; Frobenius norm is p=q=2.
double lpq_norm(const Tensor& x, double p, double q);

// Contracts the last mode of x with the first mode of y; matrices give
// ordinary matrix multiplication.
Tensor matmul(const Tensor& x, const Tensor& y);

// Element-wise product of same-shaped tensors.
Tensor hadamard(const Tensor& x, const Tensor& y);

// Outer product: order(x)+order(y), (x⊗y)_{i..j..} = x_{i..}·y_{j..}.
Tensor tensor_product(const Tensor& x, const Tensor& y);

// Contraction along mode n (1-based) with matrix y of shape (b, dims[n-1]):
// the nth dimension is replaced by b.
Tensor n_mode_product(const Tensor& x, const Tensor& y, std::size_t n);

// (x⋆y)_k = Σ_i x_i · y_{((k+i−2) mod a)+1} in 1-based indexing.
Tensor circular_correlation(const Tensor& x, const Tensor& y);

}  // namespace kg
