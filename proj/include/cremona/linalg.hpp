#pragma once

// Exact linear algebra over Q: reduced row echelon form, kernels, solves.

#include <optional>
#include <vector>

#include "cremona/rational.hpp"

namespace cremona {

using RatMatrix = std::vector<std::vector<Rat>>;

/// In-place reduced row echelon form; returns the pivot columns.
inline std::vector<std::size_t> rref(RatMatrix& M, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < M.size(); ++col) {
    std::size_t sel = row;
    while (sel < M.size() && M[sel][col] == 0) ++sel;
    if (sel == M.size()) continue;
    std::swap(M[row], M[sel]);
    const Rat inv = 1 / M[row][col];
    for (std::size_t j = col; j < ncols; ++j) M[row][j] *= inv;
    for (std::size_t i = 0; i < M.size(); ++i) {
      if (i == row || M[i][col] == 0) continue;
      const Rat f = M[i][col];
      for (std::size_t j = col; j < ncols; ++j) {
        if (M[row][j] != 0) M[i][j] -= f * M[row][j];
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Basis of {v : M v = 0}, one vector per free column, with a 1 in that column.
inline std::vector<std::vector<Rat>> nullspace(RatMatrix M, std::size_t ncols) {
  auto pivots = rref(M, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rat> v(ncols);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -M[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::size_t rank(RatMatrix M, std::size_t ncols) { return rref(M, ncols).size(); }

/// A solution of M v = b, if one exists.
inline std::optional<std::vector<Rat>> solve(const RatMatrix& M, const std::vector<Rat>& b, std::size_t ncols) {
  RatMatrix aug = M;
  for (std::size_t i = 0; i < aug.size(); ++i) {
    aug[i].resize(ncols + 1);
    aug[i][ncols] = b[i];
  }
  auto pivots = rref(aug, ncols + 1);
  if (!pivots.empty() && pivots.back() == ncols) return std::nullopt;
  std::vector<Rat> v(ncols);
  for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = aug[r][ncols];
  return v;
}

}  // namespace cremona
