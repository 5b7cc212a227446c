#pragma once

// Exact square-matrix algebra and the Cesaro limiting matrix of a
// row-stochastic matrix.
//
// Q* is obtained without eigen-decomposition: with C(z) = det(Q - zI) and
// m the multiplicity of the root z = 1, T(z) = C(z) / (z - 1)^m satisfies
// T(Q) = T(1) Q*, so normalizing any row of W = T(Q) to unit sum gives Q*.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "pisg/errors.hpp"
#include "pisg/rational.hpp"

namespace pisg {

inline constexpr std::size_t kMaxMatrixDim = 64;

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), data_(n * n, T(0)) {
    if (n > kMaxMatrixDim)
      throw DimensionLimit("matrix dimension " + std::to_string(n) + " exceeds " +
                           std::to_string(kMaxMatrixDim));
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) : Matrix(rows.size()) {
    std::size_t i = 0;
    for (const auto& r : rows) {
      if (r.size() != n_) throw std::invalid_argument("matrix rows must be square");
      std::size_t j = 0;
      for (const auto& v : r) (*this)(i, j++) = v;
      ++i;
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t size() const { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  T row_sum(std::size_t i) const {
    T s(0);
    for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j);
    return s;
  }

  T trace() const {
    T s(0);
    for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
    return s;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix c(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < a.n_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    std::vector<T> out(a.n_, T(0));
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t j = 0; j < a.n_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

  Matrix& add_diagonal(const T& c) {
    for (std::size_t i = 0; i < n_; ++i) (*this)(i, i) += c;
    return *this;
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;

// Coefficients in ascending degree; the zero polynomial has no coefficients.
template <typename T>
struct Polynomial {
  std::vector<T> coeffs;

  Polynomial() = default;
  explicit Polynomial(std::vector<T> c) : coeffs(std::move(c)) { normalize(); }

  void normalize() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }
  bool is_zero() const { return coeffs.empty(); }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  T operator()(const T& x) const {
    T acc(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  bool operator==(const Polynomial&) const = default;
};

using RationalPolynomial = Polynomial<Rational>;

// det(Q - zI) by the Faddeev-LeVerrier recurrence:
//   M_1 = I,  c_{n-k} = -tr(Q M_k) / k,  M_{k+1} = Q M_k + c_{n-k} I,
// which yields det(zI - Q) = sum c_j z^j; the sign (-1)^n converts.
template <typename T>
Polynomial<T> char_poly(const Matrix<T>& q) {
  const std::size_t n = q.size();
  std::vector<T> c(n + 1, T(0));
  c[n] = T(1);
  Matrix<T> m = Matrix<T>::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix<T> qm = q * m;
    c[n - k] = -qm.trace() / T(static_cast<long>(k));
    if (k < n) m = qm.add_diagonal(c[n - k]);
  }
  if (n % 2 == 1)
    for (auto& x : c) x = -x;
  return Polynomial<T>(std::move(c));
}

namespace detail {

// Synthetic division by (z - 1); returns the remainder p(1).
template <typename T>
T divide_by_z_minus_one(const Polynomial<T>& p, Polynomial<T>& quotient) {
  const std::size_t d = p.coeffs.size();
  std::vector<T> q(d > 0 ? d - 1 : 0, T(0));
  T carry(0);
  for (std::size_t i = d; i-- > 0;) {
    carry = p.coeffs[i] + carry;
    if (i > 0) q[i - 1] = carry;
  }
  quotient = Polynomial<T>(std::move(q));
  return carry;
}

}  // namespace detail

// Largest m with (z - 1)^m dividing p.
template <typename T>
int unit_multiplicity(const Polynomial<T>& p) {
  if (p.is_zero()) throw std::invalid_argument("unit_multiplicity of the zero polynomial");
  int m = 0;
  Polynomial<T> cur = p;
  Polynomial<T> next;
  while (cur.degree() >= 1 && detail::divide_by_z_minus_one(cur, next) == 0) {
    cur = std::move(next);
    ++m;
  }
  return m;
}

// T(z) = p(z) / (z - 1)^unit_multiplicity(p).
template <typename T>
Polynomial<T> strip_unit_root(const Polynomial<T>& p) {
  Polynomial<T> cur = p;
  Polynomial<T> next;
  for (int m = unit_multiplicity(p); m > 0; --m) {
    detail::divide_by_z_minus_one(cur, next);
    cur = std::move(next);
  }
  return cur;
}

// Horner evaluation of p at a matrix argument.
template <typename T>
Matrix<T> evaluate_at(const Polynomial<T>& p, const Matrix<T>& q) {
  const std::size_t n = q.size();
  Matrix<T> w(n);
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) w = (w * q).add_diagonal(*it);
  return w;
}

template <typename T>
Matrix<T> cesaro_limit(const Matrix<T>& q) {
  const std::size_t n = q.size();
  if (n == 0) return q;
  Matrix<T> w = evaluate_at(strip_unit_root(char_poly(q)), q);

  const T sum = w.row_sum(0);
  for (std::size_t i = 1; i < n; ++i)
    if (w.row_sum(i) != sum)
      throw DegenerateRowSum("rows of T(Q) have unequal sums (row " + std::to_string(i + 1) + ")");
  if (sum == 0) throw DegenerateRowSum("rows of T(Q) sum to zero");

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w(i, j) /= sum;
  return w;
}

}  // namespace pisg
