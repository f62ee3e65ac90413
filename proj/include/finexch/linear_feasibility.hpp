#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "finexch/errors.hpp"
#include "finexch/rational.hpp"

namespace finexch {

// Decides feasibility of  A x = b, x >= 0  over exact rationals, by phase-1
// simplex with Bland's rule (guaranteed to terminate).  Requires b >= 0.
// Intended for tiny systems; everything is dense.
struct FeasibilityResult {
  bool feasible = false;
  std::vector<Rational> solution;  // defined when feasible
};

inline FeasibilityResult solve_equality_feasibility(
    const std::vector<std::vector<Rational>>& a,
    const std::vector<Rational>& b) {
  const std::size_t rows = a.size();
  if (b.size() != rows) throw ValidationError("rhs size mismatch");
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  for (const auto& row : a)
    if (row.size() != cols) throw ValidationError("ragged constraint matrix");
  for (const auto& v : b)
    if (sgn(v) < 0)
      throw ValidationError("phase-1 requires a nonnegative right-hand side");

  if (rows == 0) return {true, std::vector<Rational>(cols, Rational(0))};

  // tableau over [x | artificials], artificial basis, minimize sum of
  // artificials
  const std::size_t width = cols + rows;
  std::vector<std::vector<Rational>> t(rows,
                                       std::vector<Rational>(width, Rational(0)));
  std::vector<Rational> rhs = b;
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) t[i][j] = a[i][j];
    t[i][cols + i] = 1;
    basis[i] = cols + i;
  }

  const auto cost_of = [&](std::size_t column) {
    return column >= cols ? Rational(1) : Rational(0);
  };

  while (true) {
    // reduced cost z_j - c_j = sum_i c_basis[i] * t[i][j] - c_j; Bland picks
    // the lowest improving column
    std::size_t entering = width;
    for (std::size_t j = 0; j < width && entering == width; ++j) {
      Rational reduced(0);
      for (std::size_t i = 0; i < rows; ++i)
        if (basis[i] >= cols) reduced += t[i][j];
      reduced -= cost_of(j);
      if (sgn(reduced) > 0) entering = j;
    }
    if (entering == width) break;  // optimal

    std::size_t leaving = rows;
    Rational best_ratio;
    for (std::size_t i = 0; i < rows; ++i) {
      if (sgn(t[i][entering]) <= 0) continue;
      Rational ratio = rhs[i] / t[i][entering];
      if (leaving == rows || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leaving])) {
        leaving = i;
        best_ratio = ratio;
      }
    }
    if (leaving == rows)
      throw Error("phase-1 objective unbounded; inconsistent tableau");

    // pivot
    const Rational pivot = t[leaving][entering];
    for (auto& v : t[leaving]) v /= pivot;
    rhs[leaving] /= pivot;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leaving || sgn(t[i][entering]) == 0) continue;
      const Rational factor = t[i][entering];
      for (std::size_t j = 0; j < width; ++j)
        t[i][j] -= factor * t[leaving][j];
      rhs[i] -= factor * rhs[leaving];
    }
    basis[leaving] = entering;
  }

  Rational objective(0);
  for (std::size_t i = 0; i < rows; ++i)
    if (basis[i] >= cols) objective += rhs[i];
  if (sgn(objective) != 0) return {false, {}};

  std::vector<Rational> solution(cols, Rational(0));
  for (std::size_t i = 0; i < rows; ++i)
    if (basis[i] < cols) solution[basis[i]] = rhs[i];
  return {true, std::move(solution)};
}

}  // namespace finexch
