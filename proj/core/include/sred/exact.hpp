#pragma once

// Exact integer and rational linear algebra over GMP.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sred {

using Int = mpz_class;
using Rat = mpq_class;

/// Thrown when an input violates a documented precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a computation exceeds a configured size limit.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n, T(0));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  void set_column(std::size_t j, const std::vector<T>& c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix dimension mismatch");
    Matrix c(a.rows_, b.cols_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ZMatrix = Matrix<Int>;
using QMatrix = Matrix<Rat>;

Rat determinant(QMatrix m);
std::optional<QMatrix> inverse(const QMatrix& m);

/// Solves m * x = b over Q; nullopt when m is singular.
std::optional<std::vector<Rat>> solve(const QMatrix& m, const std::vector<Rat>& b);

QMatrix to_rational(const ZMatrix& m);

/// Column-style Hermite normal form of the lattice spanned by the columns of
/// `gens` (rows = ambient dimension n, any number of columns). The result is
/// n x n, upper triangular, positive diagonal, and every entry to the right of
/// a pivot lies in [0, pivot). Throws DomainError if the span is not full rank.
ZMatrix hermite_normal_form(const ZMatrix& gens);

Int lcm_of_denominators(const std::vector<Rat>& v);

/// Floor of a rational.
Int floor_rat(const Rat& q);

/// Nearest integer, ties away from zero.
Int round_rat(const Rat& q);

std::string to_string(const Rat& q);

/// log |q| in double precision, valid for very large or small q != 0.
double log_abs(const Rat& q);

}  // namespace sred
