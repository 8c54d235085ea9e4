#pragma once

// Dense linear algebra over the prime field F_p.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdilog::fp {

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline int mod(long long x, int p) {
  long long r = x % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

inline int inv(int a, int p) {
  // Fermat; p is small.
  long long r = 1, b = mod(a, p);
  if (b == 0) throw std::domain_error("fp::inv: zero has no inverse");
  for (int e = p - 2; e > 0; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<int>(r);
}

/// rows x cols matrix with entries in [0, p).
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows * cols), 0) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  int& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * c_ + j)]; }
  int operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * c_ + j)]; }

  std::vector<int> row(int i) const {
    return {a_.begin() + i * c_, a_.begin() + (i + 1) * c_};
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int r_ = 0;
  int c_ = 0;
  std::vector<int> a_;
};

inline Matrix multiply(const Matrix& a, const Matrix& b, int p) {
  if (a.cols() != b.rows()) throw std::invalid_argument("fp::multiply: shape mismatch");
  Matrix r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const int x = a(i, k);
      if (x == 0) continue;
      for (int j = 0; j < b.cols(); ++j) r(i, j) = (r(i, j) + x * b(k, j)) % p;
    }
  return r;
}

/// In-place reduced row echelon form; returns the pivot columns.
inline std::vector<int> rref(Matrix& m, int p) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < m.rows(); ++i)
      if (m(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    const int s = inv(m(row, col), p);
    for (int j = 0; j < m.cols(); ++j) m(row, j) = m(row, j) * s % p;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const int f = m(i, col);
      for (int j = 0; j < m.cols(); ++j) m(i, j) = mod(m(i, j) - static_cast<long long>(f) * m(row, j), p);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline int rank(Matrix m, int p) { return static_cast<int>(rref(m, p).size()); }

/// Basis of {x : m x = 0}, one vector per row of the result.
inline Matrix nullspace(Matrix m, int p) {
  const auto pivots = rref(m, p);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  Matrix basis(m.cols() - static_cast<int>(pivots.size()), m.cols());
  int b = 0;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(b, free) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(b, pivots[r]) = mod(-m(static_cast<int>(r), free), p);
    ++b;
  }
  return basis;
}

/// Rows of m reduced to an echelon basis of their span.
inline Matrix row_basis(Matrix m, int p) {
  const auto piv = rref(m, p);
  Matrix b(static_cast<int>(piv.size()), m.cols());
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) b(i, j) = m(i, j);
  return b;
}

inline Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

inline Matrix stack_rows(const Matrix& a, const Matrix& b) {
  const int cols = a.rows() > 0 ? a.cols() : b.cols();
  Matrix r(a.rows() + b.rows(), cols);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < cols; ++j) r(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < cols; ++j) r(a.rows() + i, j) = b(i, j);
  return r;
}

/// Rows completing the independent rows of `basis` to a basis of F_p^n
/// (standard unit vectors, chosen greedily).
inline Matrix complement(const Matrix& basis, int n, int p) {
  Matrix cur = basis;
  Matrix extra(0, n);
  int r = basis.rows() > 0 ? rank(basis, p) : 0;
  for (int j = 0; j < n && r < n; ++j) {
    Matrix e(1, n);
    e(0, j) = 1;
    Matrix trial = stack_rows(cur, e);
    if (rank(trial, p) > r) {
      cur = trial;
      extra = stack_rows(extra, e);
      ++r;
    }
  }
  return extra;
}

/// Inverse of a square matrix; throws if singular.
inline Matrix inverse(const Matrix& m, int p) {
  const int n = m.rows();
  Matrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto piv = rref(aug, p);
  if (static_cast<int>(piv.size()) < n || piv[static_cast<std::size_t>(n - 1)] != n - 1)
    throw std::domain_error("fp::inverse: singular matrix");
  Matrix r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
  return r;
}

/// Calls visit(basis) for every subspace of F_p^n; basis rows are in
/// reduced echelon form, so each subspace is visited exactly once.
inline void for_each_subspace(int n, int p, const std::function<void(const Matrix&)>& visit) {
  for (int r = 0; r <= n; ++r) {
    std::vector<int> piv(static_cast<std::size_t>(r));
    // choose pivot columns p_0 < ... < p_{r-1}
    std::function<void(int, int)> choose = [&](int idx, int start) {
      if (idx == r) {
        // free entries: row i, column j > piv[i], j not a pivot
        std::vector<std::pair<int, int>> free;
        for (int i = 0; i < r; ++i)
          for (int j = piv[static_cast<std::size_t>(i)] + 1; j < n; ++j) {
            bool is_piv = false;
            for (int x : piv) is_piv |= x == j;
            if (!is_piv) free.emplace_back(i, j);
          }
        Matrix m(r, n);
        for (int i = 0; i < r; ++i) m(i, piv[static_cast<std::size_t>(i)]) = 1;
        std::function<void(std::size_t)> fill = [&](std::size_t k) {
          if (k == free.size()) {
            visit(m);
            return;
          }
          for (int v = 0; v < p; ++v) {
            m(free[k].first, free[k].second) = v;
            fill(k + 1);
          }
          m(free[k].first, free[k].second) = 0;
        };
        fill(0);
        return;
      }
      for (int c = start; c < n; ++c) {
        piv[static_cast<std::size_t>(idx)] = c;
        choose(idx + 1, c + 1);
      }
    };
    choose(0, 0);
  }
}

/// Coordinates of each row of `vectors` in the basis given by the rows of
/// `basis` (basis must be invertible or at least contain the span).
/// Returns a vectors.rows() x basis.rows() matrix; throws if some vector is
/// outside the span.
inline Matrix coordinates(const Matrix& basis, const Matrix& vectors, int p) {
  // Solve c * basis = v for each v: transpose to basis^T c^T = v^T.
  const int k = basis.rows();
  const int n = basis.cols();
  Matrix out(vectors.rows(), k);
  for (int v = 0; v < vectors.rows(); ++v) {
    Matrix aug(n, k + 1);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < k; ++j) aug(i, j) = basis(j, i);
      aug(i, k) = vectors(v, i);
    }
    const auto piv = rref(aug, p);
    if (!piv.empty() && piv.back() == k) throw std::domain_error("fp::coordinates: vector outside the span");
    for (std::size_t r = 0; r < piv.size(); ++r) out(v, piv[r]) = aug(static_cast<int>(r), k);
  }
  return out;
}

}  // namespace qdilog::fp
