#pragma once
// Small dense row-major matrices. Sizes in this library are desk scale
// (n <= a few dozen), so storage is a plain vector and products are built
// from the axpy kernel.

#include <cstddef>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

namespace spectral {

using Vec = std::vector<double>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  Matrix transpose() const;
  Vec diag() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);

/// tr(A^T B)
double inner(const Matrix& a, const Matrix& b);
/// A B - B A
Matrix commutator(const Matrix& a, const Matrix& b);
/// max_ij |(A^T A - I)_ij|
double orthogonality_defect(const Matrix& q);

double norm2(std::span<const double> v);

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with the
/// sign of R's diagonal fixed).
Matrix random_orthogonal(std::size_t n, std::mt19937_64& rng);
/// Symmetric matrix with i.i.d. N(0,1) upper triangle.
Matrix random_symmetric(std::size_t n, std::mt19937_64& rng);
/// Cayley transform (I - tK/2)^{-1} (I + tK/2) of a skew-symmetric K.
/// Orthogonal, smooth in t, equal to I at t = 0 with derivative K.
Matrix cayley(const Matrix& skew, double t);

}  // namespace spectral
