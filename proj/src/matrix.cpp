#include "spectral/matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "spectral/error.hpp"
#include "spectral/kernels/kernels.hpp"

namespace spectral {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vec Matrix::diag() const {
  Vec d(std::min(rows_, cols_));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = (*this)(i, i);
  return d;
}

double Matrix::frobenius_norm() const { return norm2(data_); }

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool Matrix::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("dimension mismatch in +");
  kernels::axpy(1.0, other.data_, data_);
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("dimension mismatch in -");
  kernels::axpy(-1.0, other.data_, data_);
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, double s) { return a *= s; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InputError("dimension mismatch in *");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      double aik = a(i, k);
      if (aik != 0.0) kernels::axpy(aik, b.row(k), out);
    }
  }
  return c;
}

double inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("dimension mismatch in inner");
  return kernels::dot(a.data(), b.data());
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

double orthogonality_defect(const Matrix& q) {
  Matrix g = q.transpose() * q;
  double d = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      d = std::max(d, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
  return d;
}

double norm2(std::span<const double> v) {
  // scaled sum of squares to avoid overflow on large entries
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double x : v) {
    double r = x / scale;
    s += r * r;
  }
  return scale * std::sqrt(s);
}

Matrix random_orthogonal(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  // modified Gram-Schmidt on the rows of a Gaussian matrix, run twice for
  // stability; equivalent to QR with positive diag(R).
  Matrix q(n, n);
  for (double& v : q.data()) v = g(rng);
  for (std::size_t i = 0; i < n; ++i) {
    auto ri = q.row(i);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < i; ++k) {
        double p = kernels::dot(q.row(k), ri);
        kernels::axpy(-p, q.row(k), ri);
      }
    }
    double nr = norm2(ri);
    for (double& v : ri) v /= nr;
  }
  return q;
}

Matrix random_symmetric(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix x(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) x(i, j) = x(j, i) = g(rng);
  return x;
}

namespace {

// Gauss-Jordan solve A X = B with partial pivoting; A square, nonsingular.
Matrix solve(Matrix a, Matrix b) {
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    if (a(piv, c) == 0.0) throw Error("singular system");
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(c, j), a(piv, j));
      for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(c, j), b(piv, j));
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      double f = a(r, c) / a(c, c);
      if (f == 0.0) continue;
      kernels::axpy(-f, a.row(c), a.row(r));
      kernels::axpy(-f, b.row(c), b.row(r));
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    double d = a(r, r);
    for (double& v : b.row(r)) v /= d;
  }
  return b;
}

}  // namespace

Matrix cayley(const Matrix& skew, double t) {
  const std::size_t n = skew.rows();
  Matrix half = skew * (0.5 * t);
  Matrix lhs = Matrix::identity(n) - half;
  Matrix rhs = Matrix::identity(n) + half;
  return solve(lhs, rhs);
}

}  // namespace spectral
