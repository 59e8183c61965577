#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "secant3/format.hpp"
#include "secant3/poly.hpp"

namespace secant3 {

template <class T>
struct Term {
  T coeff;
  ProductPoint<T> point;
};

using ExactTerm = Term<Rational>;
using ApproxTerm = Term<Complex>;

// sum coeff_j * embed(point_j). Exactly one of the term lists is populated,
// according to `field`. When the points come from a parametrized curve the
// parameters are kept alongside, one per term.
struct Decomposition {
  Format format;
  Field field = Field::Approx;
  std::vector<ExactTerm> exact_terms;
  std::vector<ApproxTerm> approx_terms;
  std::vector<HomParam> params;

  std::size_t size() const { return field == Field::Exact ? exact_terms.size() : approx_terms.size(); }
};

Decomposition make_exact(Format format, std::vector<ExactTerm> terms);
Decomposition make_approx(Format format, std::vector<ApproxTerm> terms);
// Approximate copy of an exact decomposition.
Decomposition to_approx(const Decomposition& dec);

// Sum of the embedded terms.
PSTensor evaluate_exact(const Decomposition& dec);
ApproxTensor evaluate(const Decomposition& dec);

// Folds projectively equal points together (rescaling coefficients by the
// per-factor ratios) and drops zero coefficients. Approximate points merge
// within relative distance `tol`.
void merge_duplicates(Decomposition& dec, Real tol = 1e-7L);

enum class VerifyMode { Exact, Numeric };

struct Verification {
  VerifyMode mode = VerifyMode::Numeric;
  Real residual = 0;
  std::size_t size = 0;
  bool passed = false;
  // Set when an exact check was requested on a numeric decomposition.
  std::string note;
};

inline constexpr Real kDefaultVerifyTolerance = 1e-8L;

// Recomputes sum lambda_j embed(x_j) and compares with p. Exact mode demands
// identity; numeric mode demands relative residual <= tol. Throws
// VerificationFailed (carrying the residual) unless `throw_on_failure` is off.
Verification verify_decomposition(const PSTensor& p, const Decomposition& dec, VerifyMode mode,
                                  Real tol = kDefaultVerifyTolerance, bool throw_on_failure = true);

const char* to_string(VerifyMode mode);

struct SparseSolve {
  std::vector<std::size_t> kept;  // indices into the candidate columns
  std::vector<Complex> coeffs;
  Real residual = 0;
};

// Least-squares fit of target by the candidate columns, then greedy removal of
// the weakest column while the relative residual stays within tol.
std::optional<SparseSolve> solve_sparse(const std::vector<Complex>& target,
                                        const std::vector<std::vector<Complex>>& columns, Real tol);

}  // namespace secant3
