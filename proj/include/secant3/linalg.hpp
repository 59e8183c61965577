#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "secant3/matrix.hpp"
#include "secant3/scalar.hpp"

namespace secant3 {

inline constexpr Real kDefaultRankThreshold = 1e-10L;
inline constexpr Real kDefaultSpanTolerance = 1e-8L;

// Fraction-free Gauss-Jordan form of a rational matrix. Rows are first scaled
// to integers; `reduced` holds the scaled echelon form where every pivot
// entry equals `pivot`.
struct Echelon {
  Matrix<Integer> reduced;
  std::vector<std::size_t> pivot_cols;
  Integer pivot{1};
  std::size_t rank() const noexcept { return pivot_cols.size(); }
};

Matrix<Integer> integer_rows(const Matrix<Rational>& m);
Echelon fraction_free_echelon(const Matrix<Rational>& m, bool reduce_above = true);

std::size_t mat_rank(const Matrix<Rational>& m);
std::size_t mat_rank(const Matrix<Complex>& m, Real tau = kDefaultRankThreshold);

// Basis of the right kernel; empty iff the kernel is trivial.
std::vector<std::vector<Rational>> kernel_basis(const Matrix<Rational>& m);
std::vector<std::vector<Complex>> kernel_basis(const Matrix<Complex>& m, Real tau = kDefaultRankThreshold);

// Coefficients c with sum_i c_i * generators[i] == target, or nullopt.
std::optional<std::vector<Rational>> solve_in_span(const std::vector<Rational>& target,
                                                   const std::vector<std::vector<Rational>>& generators);

struct SpanSolution {
  std::vector<Complex> coefficients;
  Real residual = 0;  // relative to the target norm (absolute when target is zero)
};

std::optional<SpanSolution> solve_in_span(const std::vector<Complex>& target,
                                          const std::vector<std::vector<Complex>>& generators,
                                          Real tol = kDefaultSpanTolerance);

Real norm(const std::vector<Complex>& v);
Real norm(const std::vector<Rational>& v);

}  // namespace secant3
