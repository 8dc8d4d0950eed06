#ifndef DGK_SNF_HPP
#define DGK_SNF_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dgk {

using BigInt = boost::multiprecision::cpp_int;

template <typename T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool operator==(const Matrix& o) const = default;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

using IntMatrix = Matrix<std::int64_t>;
using BigMatrix = Matrix<BigInt>;

struct OverflowError : std::overflow_error {
  OverflowError() : std::overflow_error("int64 overflow") {}
};

namespace detail {

// Arithmetic policy: int64 reports overflow, BigInt never does.
inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError();
  return r;
}
inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError();
  return r;
}
inline std::int64_t neg(std::int64_t a) {
  if (a == INT64_MIN) throw OverflowError();
  return -a;
}
inline std::int64_t abs_(std::int64_t a) { return a < 0 ? neg(a) : a; }
inline std::int64_t quot(std::int64_t a, std::int64_t b) {
  if (a == INT64_MIN && b == -1) throw OverflowError();
  return a / b;
}

inline BigInt add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt neg(const BigInt& a) { return -a; }
inline BigInt abs_(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }
inline BigInt quot(const BigInt& a, const BigInt& b) { return a / b; }

template <typename T>
T mul_sub(const T& a, const T& q, const T& b) {
  return add(a, neg(mul(q, b)));
}

}  // namespace detail

template <typename T>
struct SnfResult {
  Matrix<T> D, U, V;  // U * A * V == D
};

// Pivot on the smallest nonzero magnitude; d1 | d2 | ... with nonnegative diagonal.
template <typename T>
SnfResult<T> smith_normal_form_t(const Matrix<T>& A) {
  using namespace detail;
  const std::size_t m = A.rows(), n = A.cols();
  Matrix<T> D = A, U = Matrix<T>::identity(m), V = Matrix<T>::identity(n);

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < n; ++c) std::swap(D(i, c), D(j, c));
    for (std::size_t c = 0; c < m; ++c) std::swap(U(i, c), U(j, c));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < m; ++r) std::swap(D(r, i), D(r, j));
    for (std::size_t r = 0; r < n; ++r) std::swap(V(r, i), V(r, j));
  };
  // row_i -= q * row_k
  auto row_op = [&](std::size_t i, std::size_t k, const T& q) {
    for (std::size_t c = 0; c < n; ++c) D(i, c) = mul_sub(D(i, c), q, D(k, c));
    for (std::size_t c = 0; c < m; ++c) U(i, c) = mul_sub(U(i, c), q, U(k, c));
  };
  // col_j -= q * col_k
  auto col_op = [&](std::size_t j, std::size_t k, const T& q) {
    for (std::size_t r = 0; r < m; ++r) D(r, j) = mul_sub(D(r, j), q, D(r, k));
    for (std::size_t r = 0; r < n; ++r) V(r, j) = mul_sub(V(r, j), q, V(r, k));
  };
  auto negate_row = [&](std::size_t i) {
    for (std::size_t c = 0; c < n; ++c) D(i, c) = neg(D(i, c));
    for (std::size_t c = 0; c < m; ++c) U(i, c) = neg(U(i, c));
  };

  const std::size_t r = std::min(m, n);
  for (std::size_t k = 0; k < r; ++k) {
    for (;;) {
      // Move the smallest nonzero entry of the trailing block to (k,k).
      bool found = false;
      std::size_t pi = k, pj = k;
      T best(0);
      for (std::size_t i = k; i < m; ++i)
        for (std::size_t j = k; j < n; ++j) {
          if (D(i, j) == 0) continue;
          T v = abs_(D(i, j));
          if (!found || v < best) {
            found = true;
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (!found) return {std::move(D), std::move(U), std::move(V)};
      swap_rows(k, pi);
      swap_cols(k, pj);

      bool dirty = false;
      for (std::size_t i = k + 1; i < m; ++i) {
        if (D(i, k) == 0) continue;
        row_op(i, k, quot(D(i, k), D(k, k)));
        if (D(i, k) != 0) dirty = true;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        if (D(k, j) == 0) continue;
        col_op(j, k, quot(D(k, j), D(k, k)));
        if (D(k, j) != 0) dirty = true;
      }
      if (dirty) continue;

      // Enforce divisibility of the trailing block by the pivot.
      bool divides = true;
      for (std::size_t i = k + 1; i < m && divides; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          if (D(i, j) != 0 && quot(D(i, j), D(k, k)) * D(k, k) != D(i, j)) {
            row_op(k, i, T(-1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (D(k, k) < 0) negate_row(k);
  }
  return {std::move(D), std::move(U), std::move(V)};
}

template <typename T>
BigMatrix to_big(const Matrix<T>& a) {
  BigMatrix b(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) b(i, j) = BigInt(a(i, j));
  return b;
}

// 64-bit fast path, replayed in arbitrary precision when any intermediate overflows.
inline SnfResult<BigInt> smith_normal_form(const IntMatrix& A, bool* promoted = nullptr) {
  if (promoted) *promoted = false;
  try {
    auto r = smith_normal_form_t(A);
    return {to_big(r.D), to_big(r.U), to_big(r.V)};
  } catch (const OverflowError&) {
    if (promoted) *promoted = true;
    return smith_normal_form_t(to_big(A));
  }
}

inline SnfResult<BigInt> smith_normal_form(const BigMatrix& A) { return smith_normal_form_t(A); }

template <typename T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: dimension mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

// Fraction-free Bareiss elimination.
inline BigInt determinant(BigMatrix a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("determinant: matrix not square");
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// Nonzero diagonal entries of a Smith form, in order.
inline std::vector<BigInt> invariant_factors(const BigMatrix& D) {
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
    if (D(i, i) != 0) out.push_back(D(i, i));
  return out;
}

}  // namespace dgk

#endif  // DGK_SNF_HPP
