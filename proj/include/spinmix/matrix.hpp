#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace spinmix {

/// Dense square matrix of doubles, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0);
  Matrix(std::size_t n, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix ones(std::size_t n);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  [[nodiscard]] std::span<const double> entries() const noexcept { return data_; }
  [[nodiscard]] std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * n_, n_};
  }

  [[nodiscard]] Matrix transpose() const;
  [[nodiscard]] bool is_nonnegative() const noexcept;
  [[nodiscard]] bool is_symmetric() const noexcept;  // exact comparison
  [[nodiscard]] bool all_finite() const noexcept;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

using Vector = std::vector<double>;

/// x R for a row vector x.
Vector left_multiply(std::span<const double> x, const Matrix& m);
/// R x for a column vector x.
Vector right_multiply(const Matrix& m, std::span<const double> x);

/// Strong connectivity of the digraph on strictly positive (nonzero) entries.
bool is_irreducible(const Matrix& m);

/// Strongly connected components of G(R), each sorted ascending.
std::vector<std::vector<std::size_t>> strong_components(const Matrix& m);

/// Principal submatrix on the given index set.
Matrix principal_submatrix(const Matrix& m, std::span<const std::size_t> index);

}  // namespace spinmix
