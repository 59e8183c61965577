#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "secant3/curves.hpp"
#include "secant3/decomposition.hpp"
#include "secant3/matrix.hpp"
#include "secant3/poly.hpp"

namespace secant3 {

// (a-s+1) x (s+1) Hankel matrix with entry (i,j) = q_{i+j}.
template <class T>
Matrix<T> catalecticant(const std::vector<T>& q, int s) {
  const int a = static_cast<int>(q.size()) - 1;
  require(a >= 0 && s >= 0 && s <= a, ErrorKind::InvalidInput, "catalecticant size out of range");
  Matrix<T> m(static_cast<std::size_t>(a - s + 1), static_cast<std::size_t>(s + 1));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = q[i + j];
  return m;
}

// (s^a, s^(a-1) t, .., t^a).
std::vector<Complex> rnc_point(int a, const HomParam& u);

// q = sum coeffs[m] * rnc_point(a, params[m]).
struct RncDecomposition {
  int a = 0;
  std::vector<HomParam> params;
  std::vector<Complex> coeffs;
  Real residual = 0;
  std::size_t size() const { return params.size(); }
};

struct SylvesterOptions {
  std::uint64_t seed = 0;
  int retries = 32;
  Real tol = 1e-8L;
};

// Smallest s whose catalecticant kernel holds a square-free form, decided
// exactly: this is the rank of q on the rational normal curve.
int curve_rank(const std::vector<Rational>& q);

RncDecomposition sylvester_general(const std::vector<Rational>& q, const SylvesterOptions& options = {});

// q = (b_0, .., b_{c-1}, 0, .., 0): a point of the order-c osculating span at
// t = 0 of the degree-a curve. Size a+2-c when c <= ceil((a+1)/2).
RncDecomposition sylvester_from_jet(int a, int c, const std::vector<Rational>& b,
                                    const SylvesterOptions& options = {});

// Residual-checked least-squares fit of q by curve points.
std::optional<RncDecomposition> fit_rnc(const std::vector<Complex>& q, const std::vector<HomParam>& params, Real tol);

struct CurveLift {
  int a = 0;
  // Coefficients of p in the jet basis (order c) or in the monomial basis.
  std::vector<Rational> q;
  RncDecomposition rnc;
};

// Decomposes p on nu(h(P^1)) by lifting to the rational normal curve of
// degree a = sum c_i d_i. With a jet order, p is solved in the order-c
// osculating span at t = 0; otherwise in the full column span of lambda.
Decomposition decompose_via_curve(const CurveMap& h, const PSTensor& p, std::optional<int> jet_order,
                                  const SylvesterOptions& options = {}, CurveLift* lift = nullptr);

}  // namespace secant3
