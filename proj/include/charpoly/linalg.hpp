#ifndef CHARPOLY_LINALG_HPP
#define CHARPOLY_LINALG_HPP

#include <optional>
#include <utility>
#include <vector>

#include "charpoly/scalar.hpp"

namespace charpoly::linalg {

inline bool is_zero_value(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero_value(const Scalar& s) { return s.is_zero(); }
inline Rational inverse_value(const Rational& q) { return Rational(1 / q); }
inline Scalar inverse_value(const Scalar& s) { return s.inverse(); }

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Reduced row echelon form in place; returns pivot columns.
template <class T>
std::vector<std::size_t> row_reduce(Matrix<T>& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && is_zero_value(m[sel][col])) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[row]);
    T inv = inverse_value(m[row][col]);
    for (auto& x : m[row]) x = T(x * inv);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || is_zero_value(m[r][col])) continue;
      T f = m[r][col];
      for (std::size_t c = 0; c < m[r].size(); ++c) m[r][c] = T(m[r][c] - f * m[row][c]);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// One solution of A x = b with free variables set to zero, or nullopt if inconsistent.
template <class T>
std::optional<std::vector<T>> solve(Matrix<T> a, const std::vector<T>& b, const T& zero) {
  std::size_t n = a.empty() ? 0 : a[0].size();
  for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
  auto pivots = row_reduce(a, n);
  for (std::size_t r = pivots.size(); r < a.size(); ++r)
    if (!is_zero_value(a[r][n])) return std::nullopt;
  std::vector<T> x(n, zero);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][n];
  return x;
}

/// Basis of {x : A x = 0}.
template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> a, std::size_t ncols, const T& zero, const T& one) {
  auto pivots = row_reduce(a, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<T> v(ncols, zero);
    v[f] = one;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = T(-a[r][f]);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T>
std::size_t rank(Matrix<T> a, std::size_t ncols) {
  return row_reduce(a, ncols).size();
}

}  // namespace charpoly::linalg

#endif
