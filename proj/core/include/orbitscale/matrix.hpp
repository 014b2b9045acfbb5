#ifndef ORBITSCALE_MATRIX_HPP
#define ORBITSCALE_MATRIX_HPP

#include <gmpxx.h>

#include <initializer_list>
#include <optional>
#include <vector>

#include "orbitscale/errors.hpp"

namespace orbitscale {

// Dense row-major matrix over an exact scalar (mpz_class or mpq_class).
// All dimensions at desk scale; nothing here is tuned for large sizes.
template <typename T>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
  Mat(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
    a_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != cols_) throw InvalidShape("ragged initializer");
      for (const auto& x : r) a_.push_back(x);
    }
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  std::vector<T> col(int j) const {
    std::vector<T> c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  std::vector<T> row(int i) const {
    std::vector<T> r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
  }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

 private:
  int rows_, cols_;
  std::vector<T> a_;
};

using MatZ = Mat<mpz_class>;
using MatQ = Mat<mpq_class>;

template <typename T>
Mat<T> operator*(const Mat<T>& a, const Mat<T>& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape");
  Mat<T> r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

template <typename T>
std::vector<T> operator*(const Mat<T>& a, const std::vector<T>& v) {
  if (a.cols() != static_cast<int>(v.size())) throw DimensionMismatch("matrix-vector shape");
  std::vector<T> r(a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
  return r;
}

template <typename T>
Mat<T> transpose(const Mat<T>& a) {
  Mat<T> r(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
  return r;
}

bool strictly_positive(const MatZ& m);

// Exact determinant (Bareiss fraction-free elimination).
mpz_class det(const MatZ& m);

// Inverse over the rationals; nullopt when singular.
std::optional<MatQ> inverse(const MatQ& m);
MatQ to_rational(const MatZ& m);
bool is_integer(const MatQ& m);
MatZ to_integer(const MatQ& m);

// det = +-1 and (equivalently) integer inverse.
bool unimodular(const MatZ& m);

// Row-style Hermite normal form of the lattice spanned by the rows of m:
// returns a matrix whose nonzero rows are in echelon form with positive
// pivots and entries above each pivot reduced mod the pivot.  The row span
// over the integers is preserved.
MatZ hnf_rows(const MatZ& m);

// Does v lie in the integer row span of the HNF matrix h?  If yes, returns
// the integer coordinates z with z * h = v (one entry per nonzero row of h).
std::optional<std::vector<mpz_class>> hnf_solve(const MatZ& h, const std::vector<mpz_class>& v);

// Solve x * a = b over the rationals for each row b of rhs, i.e. find
// m with m * a = rhs where a has full row rank.  nullopt when inconsistent.
std::optional<MatQ> solve_left(const MatQ& a, const MatQ& rhs);

}  // namespace orbitscale

#endif
