#include "orbitscale/matrix.hpp"

#include <algorithm>

namespace orbitscale {

bool strictly_positive(const MatZ& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) <= 0) return false;
  return true;
}

mpz_class det(const MatZ& m) {
  if (m.rows() != m.cols()) throw InvalidShape("determinant of non-square matrix");
  int n = m.rows();
  if (n == 0) return 1;
  MatZ a = m;
  mpz_class prev(1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        mpz_class t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : mpz_class(-a(n - 1, n - 1));
}

MatQ to_rational(const MatZ& m) {
  MatQ r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = mpq_class(m(i, j));
  return r;
}

bool is_integer(const MatQ& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j).get_den() != 1) return false;
  return true;
}

MatZ to_integer(const MatQ& m) {
  MatZ r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw InvalidInput("non-integer entry");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

std::optional<MatQ> inverse(const MatQ& m) {
  if (m.rows() != m.cols()) throw InvalidShape("inverse of non-square matrix");
  int n = m.rows();
  MatQ a = m;
  MatQ inv = MatQ::identity(n);
  for (int k = 0; k < n; ++k) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (a(i, k) != 0) {
        p = i;
        break;
      }
    if (p < 0) return std::nullopt;
    if (p != k)
      for (int j = 0; j < n; ++j) {
        std::swap(a(k, j), a(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    mpq_class piv = a(k, k);
    for (int j = 0; j < n; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      mpq_class f = a(i, k);
      for (int j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

bool unimodular(const MatZ& m) {
  if (m.rows() != m.cols()) return false;
  mpz_class d = det(m);
  return d == 1 || d == -1;
}

MatZ hnf_rows(const MatZ& m) {
  MatZ a = m;
  int rows = a.rows(), cols = a.cols();
  int r = 0;  // next pivot row
  for (int c = 0; c < cols && r < rows; ++c) {
    // Clear column c below row r using exact gcd steps.
    while (true) {
      int p = -1;
      for (int i = r; i < rows; ++i)
        if (a(i, c) != 0) {
          p = i;
          break;
        }
      if (p < 0) break;
      if (p != r)
        for (int j = 0; j < cols; ++j) std::swap(a(r, j), a(p, j));
      bool cleared = true;
      for (int i = r + 1; i < rows; ++i) {
        if (a(i, c) == 0) continue;
        mpz_class q = a(i, c) / a(r, c);  // truncated
        if (q != 0)
          for (int j = 0; j < cols; ++j) a(i, j) -= q * a(r, j);
        if (a(i, c) != 0) {
          // Remainder smaller in |.| than pivot; swap to keep reducing.
          for (int j = 0; j < cols; ++j) std::swap(a(r, j), a(i, j));
          cleared = false;
          break;
        }
      }
      if (cleared) break;
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0)
      for (int j = 0; j < cols; ++j) a(r, j) = -a(r, j);
    // Reduce entries above the pivot.
    for (int i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(r, c).get_mpz_t());
      if (q != 0)
        for (int j = 0; j < cols; ++j) a(i, j) -= q * a(r, j);
    }
    ++r;
  }
  MatZ out(r, cols);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < cols; ++j) out(i, j) = a(i, j);
  return out;
}

std::optional<std::vector<mpz_class>> hnf_solve(const MatZ& h, const std::vector<mpz_class>& v) {
  if (static_cast<int>(v.size()) != h.cols()) throw DimensionMismatch("hnf_solve shape");
  std::vector<mpz_class> rem = v;
  std::vector<mpz_class> z(h.rows());
  int row = 0;
  for (int c = 0; c < h.cols(); ++c) {
    if (row < h.rows() && h(row, c) != 0) {
      mpz_class q, r;
      mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem[c].get_mpz_t(), h(row, c).get_mpz_t());
      if (r != 0) return std::nullopt;
      z[row] = q;
      if (q != 0)
        for (int j = c; j < h.cols(); ++j) rem[j] -= q * h(row, j);
      ++row;
    } else if (rem[c] != 0) {
      return std::nullopt;
    }
  }
  for (int j = 0; j < h.cols(); ++j)
    if (rem[j] != 0) return std::nullopt;
  return z;
}

std::optional<MatQ> solve_left(const MatQ& a, const MatQ& rhs) {
  // Find m with m * a = rhs; a is d x k with full row rank d <= k.
  int d = a.rows(), k = a.cols();
  if (rhs.cols() != k) throw DimensionMismatch("solve_left shape");
  // Column-reduce [a] to locate d independent columns.
  MatQ w = a;
  std::vector<int> picked;
  int r = 0;
  for (int c = 0; c < k && r < d; ++c) {
    int p = -1;
    for (int i = r; i < d; ++i)
      if (w(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < k; ++j) std::swap(w(r, j), w(p, j));
    for (int i = 0; i < d; ++i) {
      if (i == r || w(i, c) == 0) continue;
      mpq_class f = w(i, c) / w(r, c);
      for (int j = 0; j < k; ++j) w(i, j) -= f * w(r, j);
    }
    picked.push_back(c);
    ++r;
  }
  if (r < d) return std::nullopt;  // rank deficient
  // Solve on the picked square block, then verify on all columns.
  MatQ blk(d, d), rhsblk(rhs.rows(), d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) blk(i, j) = a(i, picked[j]);
  for (int i = 0; i < rhs.rows(); ++i)
    for (int j = 0; j < d; ++j) rhsblk(i, j) = rhs(i, picked[j]);
  auto inv = inverse(blk);
  if (!inv) return std::nullopt;
  MatQ m = rhsblk * *inv;
  if (!(m * a == rhs)) return std::nullopt;
  return m;
}

}  // namespace orbitscale
