#include "kg/tensor.hpp"

#include <cmath>
#include <string>

#include "kg/error.hpp"

namespace kg {

namespace {
std::size_t product(const std::vector<std::size_t>& dims) {
  std::size_t n = 1;
  for (std::size_t d : dims) n *= d;
  return n;
}

std::string shape_str(const std::vector<std::size_t>& dims) {
  std::string s = "(";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(dims[i]);
  }
  return s + ")";
}
}  // namespace

Tensor::Tensor(std::vector<std::size_t> dims, std::vector<double> data)
    : dims_(std::move(dims)), data_(std::move(data)) {
  if (dims_.empty()) fail("tensor: order must be at least 1");
  for (std::size_t d : dims_)
    if (d == 0) fail("tensor: zero dimension");
  if (data_.size() != product(dims_))
    fail("tensor: data length " + std::to_string(data_.size()) +
         " does not match shape " + shape_str(dims_));
}

Tensor Tensor::zeros(std::vector<std::size_t> dims) {
  std::size_t n = product(dims);
  return Tensor(std::move(dims), std::vector<double>(n, 0.0));
}

Tensor Tensor::vector(std::vector<double> data) {
  std::size_t n = data.size();
  return Tensor({n}, std::move(data));
}

Tensor Tensor::matrix(std::size_t rows, std::size_t cols, std::vector<double> data) {
  return Tensor({rows, cols}, std::move(data));
}

Tensor Tensor::identity(std::size_t n) {
  Tensor t = zeros({n, n});
  for (std::size_t i = 0; i < n; ++i) t.data_[i * n + i] = 1.0;
  return t;
}

namespace {
std::size_t flat_index(const std::vector<std::size_t>& dims,
                       const std::vector<std::size_t>& index) {
  if (index.size() != dims.size()) fail("tensor: index order mismatch");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (index[k] >= dims[k]) fail("tensor: index out of range");
    flat = flat * dims[k] + index[k];
  }
  return flat;
}
}  // namespace

double& Tensor::at(const std::vector<std::size_t>& index) {
  return data_[flat_index(dims_, index)];
}

double Tensor::at(const std::vector<std::size_t>& index) const {
  return data_[flat_index(dims_, index)];
}

double lp_norm(const Tensor& x, double p) {
  if (x.order() != 1) fail("lp_norm: expects an order-1 tensor");
  if (p < 1.0) fail("lp_norm: p must be at least 1");
  double acc = 0.0;
  for (double v : x.data()) acc += std::pow(std::fabs(v), p);
  return std::pow(acc, 1.0 / p);
}

double lpq_norm(const Tensor& x, double p, double q) {
  if (x.order() != 2) fail("lpq_norm: expects an order-2 tensor");
  if (p < 1.0 || q < 1.0) fail("lpq_norm: p and q must be at least 1");
  std::size_t rows = x.dims()[0], cols = x.dims()[1];
  double acc = 0.0;
  for (std::size_t j = 0; j < cols; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < rows; ++i)
      col += std::pow(std::fabs(x.data()[i * cols + j]), p);
    acc += std::pow(col, q / p);
  }
  return std::pow(acc, 1.0 / q);
}

Tensor matmul(const Tensor& x, const Tensor& y) {
  std::size_t c = x.dims().back();
  if (y.dims().front() != c)
    fail("matmul: inner dimensions differ: " + shape_str(x.dims()) + " vs " +
         shape_str(y.dims()));
  std::vector<std::size_t> dims(x.dims().begin(), x.dims().end() - 1);
  dims.insert(dims.end(), y.dims().begin() + 1, y.dims().end());
  if (dims.empty()) dims = {1};  // vector·vector contraction to a scalar-like tensor
  std::size_t rows = x.size() / c;       // flattened leading modes of x
  std::size_t cols = y.size() / c;       // flattened trailing modes of y
  Tensor out = Tensor::zeros(dims);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < c; ++k) {
      double xv = x.data()[i * c + k];
      if (xv == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j)
        out.data()[i * cols + j] += xv * y.data()[k * cols + j];
    }
  return out;
}

Tensor hadamard(const Tensor& x, const Tensor& y) {
  if (x.dims() != y.dims())
    fail("hadamard: shape mismatch: " + shape_str(x.dims()) + " vs " + shape_str(y.dims()));
  Tensor out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] *= y.data()[i];
  return out;
}

Tensor tensor_product(const Tensor& x, const Tensor& y) {
  std::vector<std::size_t> dims = x.dims();
  dims.insert(dims.end(), y.dims().begin(), y.dims().end());
  Tensor out = Tensor::zeros(dims);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      out.data()[i * y.size() + j] = x.data()[i] * y.data()[j];
  return out;
}

Tensor n_mode_product(const Tensor& x, const Tensor& y, std::size_t n) {
  if (y.order() != 2) fail("n_mode_product: y must be a matrix");
  if (n < 1 || n > x.order()) fail("n_mode_product: mode out of range");
  std::size_t an = x.dims()[n - 1];
  std::size_t b = y.dims()[0];
  if (y.dims()[1] != an)
    fail("n_mode_product: y's second dimension " + std::to_string(y.dims()[1]) +
         " does not match mode " + std::to_string(n) + " of size " + std::to_string(an));
  std::vector<std::size_t> dims = x.dims();
  dims[n - 1] = b;
  // Split the flat index as (outer, mode, inner).
  std::size_t inner = 1;
  for (std::size_t k = n; k < x.order(); ++k) inner *= x.dims()[k];
  std::size_t outer = x.size() / (an * inner);
  Tensor out = Tensor::zeros(dims);
  for (std::size_t u = 0; u < outer; ++u)
    for (std::size_t j = 0; j < b; ++j)
      for (std::size_t k = 0; k < an; ++k) {
        double yv = y.data()[j * an + k];
        if (yv == 0.0) continue;
        for (std::size_t v = 0; v < inner; ++v)
          out.data()[(u * b + j) * inner + v] += x.data()[(u * an + k) * inner + v] * yv;
      }
  return out;
}

Tensor circular_correlation(const Tensor& x, const Tensor& y) {
  if (x.order() != 1 || y.order() != 1) fail("circular_correlation: expects vectors");
  if (x.size() != y.size()) fail("circular_correlation: length mismatch");
  std::size_t a = x.size();
  Tensor out = Tensor::zeros({a});
  for (std::size_t k = 0; k < a; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a; ++i) acc += x.data()[i] * y.data()[(k + i) % a];
    out.data()[k] = acc;
  }
  return out;
}

}  // namespace kg
