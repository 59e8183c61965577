#include "secant3/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "secant3/errors.hpp"
#include "secant3/kernels.hpp"

namespace secant3 {

namespace {

using EigenMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using EigenVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

void check_finite(const Matrix<Complex>& m) {
  for (const auto& v : m.entries())
    require(is_finite(v), ErrorKind::InvalidInput, "non-finite matrix entry");
}

EigenMatrix to_eigen(const Matrix<Complex>& m) {
  EigenMatrix e(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  return e;
}

// Exact rational kernel and particular solutions both come from the reduced
// fraction-free form: pivot variable = -(row entry at free column)/pivot.
std::vector<std::vector<Rational>> kernel_from_echelon(const Echelon& e, std::size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols);
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) {
      v[e.pivot_cols[r]] = Rational(-e.reduced(r, free), e.pivot);
      v[e.pivot_cols[r]].canonicalize();
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

Matrix<Integer> integer_rows(const Matrix<Rational>& m) {
  Matrix<Integer> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer lcm = 1;
    for (const auto& q : m.row(i)) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& q = m(i, j);
      out(i, j) = q.get_num() * (lcm / q.get_den());
    }
  }
  return out;
}

Echelon fraction_free_echelon(const Matrix<Rational>& m, bool reduce_above) {
  Echelon e{integer_rows(m), {}, 1};
  auto& a = e.reduced;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    // Smallest nonzero pivot in the column keeps entries short.
    std::size_t best = a.rows();
    for (std::size_t i = row; i < a.rows(); ++i) {
      if (sgn(a(i, col)) == 0) continue;
      if (best == a.rows() || mpz_cmpabs(a(i, col).get_mpz_t(), a(best, col).get_mpz_t()) < 0) best = i;
    }
    if (best == a.rows()) continue;
    if (best != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(best, j), a(row, j));
    kernels::bareiss_step(a, row, col, e.pivot, reduce_above);
    e.pivot = a(row, col);
    e.pivot_cols.push_back(col);
    ++row;
  }
  if (reduce_above) {
    // Earlier pivot rows were scaled along the way; all pivots now equal e.pivot.
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
      if (a(r, e.pivot_cols[r]) != e.pivot) fail(ErrorKind::InvalidInput, "internal: fraction-free pivot drift");
  }
  return e;
}

std::size_t mat_rank(const Matrix<Rational>& m) { return fraction_free_echelon(m, false).rank(); }

std::size_t mat_rank(const Matrix<Complex>& m, Real tau) {
  check_finite(m);
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<EigenMatrix> svd(to_eigen(m));
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tau * sv(0)) ++r;
  return r;
}

std::vector<std::vector<Rational>> kernel_basis(const Matrix<Rational>& m) {
  return kernel_from_echelon(fraction_free_echelon(m, true), m.cols());
}

std::vector<std::vector<Complex>> kernel_basis(const Matrix<Complex>& m, Real tau) {
  check_finite(m);
  const std::size_t r = mat_rank(m, tau);
  std::vector<std::vector<Complex>> basis;
  if (r == m.cols()) return basis;
  if (m.rows() == 0) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::vector<Complex> v(m.cols());
      v[j] = 1;
      basis.push_back(std::move(v));
    }
    return basis;
  }
  Eigen::JacobiSVD<EigenMatrix> svd(to_eigen(m), Eigen::ComputeFullV);
  const auto& V = svd.matrixV();
  for (Eigen::Index j = static_cast<Eigen::Index>(r); j < V.cols(); ++j) {
    std::vector<Complex> v(m.cols());
    for (Eigen::Index i = 0; i < V.rows(); ++i) v[static_cast<std::size_t>(i)] = V(i, j);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rational>> solve_in_span(const std::vector<Rational>& target,
                                                   const std::vector<std::vector<Rational>>& generators) {
  const std::size_t n = target.size();
  for (const auto& g : generators)
    require(g.size() == n, ErrorKind::InvalidInput, "solve_in_span: generator length mismatch");
  const std::size_t s = generators.size();
  // Only rows touching the generators or the target matter.
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < n; ++i) {
    bool any = sgn(target[i]) != 0;
    for (std::size_t j = 0; j < s && !any; ++j) any = sgn(generators[j][i]) != 0;
    if (any) rows.push_back(i);
  }
  if (rows.empty()) return std::vector<Rational>(s);
  Matrix<Rational> aug(rows.size(), s + 1);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t j = 0; j < s; ++j) aug(r, j) = generators[j][rows[r]];
    aug(r, s) = target[rows[r]];
  }
  const Echelon e = fraction_free_echelon(aug, true);
  if (!e.pivot_cols.empty() && e.pivot_cols.back() == s) return std::nullopt;
  std::vector<Rational> coeffs(s);
  for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) {
    coeffs[e.pivot_cols[r]] = Rational(e.reduced(r, s), e.pivot);
    coeffs[e.pivot_cols[r]].canonicalize();
  }
  return coeffs;
}

std::optional<SpanSolution> solve_in_span(const std::vector<Complex>& target,
                                          const std::vector<std::vector<Complex>>& generators, Real tol) {
  const std::size_t n = target.size();
  for (const auto& g : generators)
    require(g.size() == n, ErrorKind::InvalidInput, "solve_in_span: generator length mismatch");
  for (const auto& v : target) require(is_finite(v), ErrorKind::InvalidInput, "non-finite target entry");
  const Real tnorm = norm(target);
  if (tnorm == 0) return SpanSolution{std::vector<Complex>(generators.size()), 0};
  if (generators.empty()) return std::nullopt;

  EigenMatrix A(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(generators.size()));
  EigenVector b(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    b(static_cast<Eigen::Index>(i)) = target[i];
    for (std::size_t j = 0; j < generators.size(); ++j) {
      require(is_finite(generators[j][i]), ErrorKind::InvalidInput, "non-finite generator entry");
      A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = generators[j][i];
    }
  }
  Eigen::CompleteOrthogonalDecomposition<EigenMatrix> cod(A);
  const EigenVector x = cod.solve(b);
  const Real residual = (A * x - b).norm() / tnorm;
  if (!(residual <= tol)) return std::nullopt;
  SpanSolution out;
  out.residual = residual;
  out.coefficients.resize(generators.size());
  for (std::size_t j = 0; j < generators.size(); ++j) out.coefficients[j] = x(static_cast<Eigen::Index>(j));
  return out;
}

Real norm(const std::vector<Complex>& v) {
  Real scale = 0;
  for (const auto& x : v) scale = std::max(scale, std::abs(x));
  if (scale == 0) return 0;
  Real sum = 0;
  for (const auto& x : v) sum += std::norm(x / scale);
  return scale * std::sqrt(sum);
}

Real norm(const std::vector<Rational>& v) { return norm(to_complex(v)); }

}  // namespace secant3
