#include "spinmix/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "spinmix/error.hpp"

namespace spinmix {

Matrix::Matrix(std::size_t n, double fill) : n_(n), data_(n * n, fill) {}

Matrix::Matrix(std::size_t n, std::vector<double> entries) : n_(n), data_(std::move(entries)) {
  if (data_.size() != n_ * n_) {
    throw Error(ErrorKind::NotSquare, "expected " + std::to_string(n_ * n_) + " entries, got " +
                                          std::to_string(data_.size()));
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) : n_(rows.size()) {
  data_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw Error(ErrorKind::NotSquare, "ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::ones(std::size_t n) { return Matrix(n, 1.0); }

Matrix Matrix::transpose() const {
  Matrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_nonnegative() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double x) { return x >= 0.0; });
}

bool Matrix::is_symmetric() const noexcept {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool Matrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (other.n_ != n_) throw Error(ErrorKind::DimensionMismatch, "matrix sum");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (other.n_ != n_) throw Error(ErrorKind::DimensionMismatch, "matrix difference");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.n_ != b.n_) throw Error(ErrorKind::DimensionMismatch, "matrix product");
  const std::size_t n = a.n_;
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vector left_multiply(std::span<const double> x, const Matrix& m) {
  const std::size_t n = m.size();
  if (x.size() != n) throw Error(ErrorKind::DimensionMismatch, "row vector length");
  Vector y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) y[j] += x[i] * m(i, j);
  }
  return y;
}

Vector right_multiply(const Matrix& m, std::span<const double> x) {
  const std::size_t n = m.size();
  if (x.size() != n) throw Error(ErrorKind::DimensionMismatch, "column vector length");
  Vector y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += m(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

// Tarjan's algorithm, iterative.
std::vector<std::vector<std::size_t>> strong_components(const Matrix& m) {
  const std::size_t n = m.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;

  struct Frame {
    std::size_t v;
    std::size_t next;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < n) {
        const std::size_t w = f.next++;
        if (m(f.v, w) == 0.0) continue;
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const std::size_t v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w = kUnset;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
      }
    }
  }
  return components;
}

bool is_irreducible(const Matrix& m) {
  if (m.size() == 0) return false;
  return strong_components(m).size() == 1;
}

Matrix principal_submatrix(const Matrix& m, std::span<const std::size_t> index) {
  Matrix s(index.size());
  for (std::size_t a = 0; a < index.size(); ++a)
    for (std::size_t b = 0; b < index.size(); ++b) s(a, b) = m(index[a], index[b]);
  return s;
}

}  // namespace spinmix
