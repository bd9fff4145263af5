#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "hmatch/rational.hpp"

namespace hmatch::linalg {

using Row = std::vector<Rational>;
using Matrix = std::vector<Row>;

/// Rank over the rationals by Gaussian elimination.
inline std::size_t rank(Matrix rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const Rational factor = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) {
        if (rows[r][j] != 0) rows[i][j] -= factor * rows[r][j];
      }
    }
    ++r;
  }
  return r;
}

/// Unique solution of the square system A y = b, or nullopt when A is singular.
inline std::optional<Row> solve_square(Matrix a, Row b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a[pivot][c] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[c], a[pivot]);
    std::swap(b[c], b[pivot]);
    const Rational inv = 1 / a[c][c];
    for (std::size_t j = c; j < n; ++j) a[c][j] *= inv;
    b[c] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const Rational factor = a[i][c];
      for (std::size_t j = c; j < n; ++j) {
        if (a[c][j] != 0) a[i][j] -= factor * a[c][j];
      }
      b[i] -= factor * b[c];
    }
  }
  return b;
}

}  // namespace hmatch::linalg
