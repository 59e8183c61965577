#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "secant3/format.hpp"
#include "secant3/matrix.hpp"
#include "secant3/poly.hpp"

namespace secant3 {

// Element of Q[[t]]/(t^order). The ring unit carries an unbounded order so
// that it can seed products of any truncation.
struct Series {
  static constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();
  QPoly value;
  std::size_t order = kUnbounded;

  Series() = default;
  Series(int constant) : value(constant) {}  // NOLINT
  Series(QPoly v, std::size_t ord) : value(v.truncate(ord)), order(ord) {}

  Series& operator*=(const Series& o) {
    order = std::min(order, o.order);
    value = order == kUnbounded ? value * o.value : mul_trunc(value, o.value, order);
    return *this;
  }
  Series& operator+=(const Series& o) {
    order = std::min(order, o.order);
    value += o.value;
    if (order != kUnbounded) value = value.truncate(order);
    return *this;
  }
  friend Series operator*(Series a, const Series& b) { return a *= b; }
};

// Connected curvilinear scheme of degree `order`, presented as the jet of a
// parametrized map at t = 0: factors[i][j] is coordinate j of factor i, a
// polynomial of degree < order.
struct JetScheme {
  Format format;
  int order = 1;
  std::vector<std::vector<QPoly>> factors;

  ExactPoint support() const;
  // Taylor coefficient vectors of factor i: result[m][j] = coeff of t^m in coordinate j.
  std::vector<std::vector<Rational>> factor_taylor(int i) const;
};

// Builds a jet, truncating every coordinate mod t^order and validating shape
// and the nonzero support.
JetScheme make_jet(Format format, int order, std::vector<std::vector<QPoly>> factors);
// Re-parametrizes polynomial coordinates given around base parameter u to u = 0.
JetScheme make_jet_at(Format format, int order, std::vector<std::vector<QPoly>> factors, const Rational& base);

// The order-c' sub-jet (c' <= order).
JetScheme truncate_jet(const JetScheme& z, int order);

struct MultiJet {
  std::vector<JetScheme> components;
  int total_degree() const;
  const Format& format() const { return components.at(0).format; }
};

void validate(const MultiJet& mj);

// Vector j = j-th Taylor coefficient of t -> embed(f(t)) at 0, j < order.
std::vector<PSTensor> jet_vectors(const JetScheme& z);
std::vector<std::vector<Rational>> jet_vector_coeffs(const JetScheme& z);

// pi_i: coordinate polynomials of factor i; tau_i: the jet with factor i removed.
std::vector<QPoly> project_factor(const JetScheme& z, int i);
JetScheme drop_factor(const JetScheme& z, int i);
template <class T>
std::vector<T> project_factor(const ProductPoint<T>& x, int i) {
  require(i >= 0 && i < static_cast<int>(x.factors.size()), ErrorKind::InvalidInput, "factor index out of range");
  return x.factors[static_cast<std::size_t>(i)];
}
template <class T>
ProductPoint<T> drop_factor(const ProductPoint<T>& x, int i) {
  require(i >= 0 && i < static_cast<int>(x.factors.size()) && x.factors.size() >= 2, ErrorKind::InvalidInput,
          "factor index out of range");
  ProductPoint<T> out = x;
  out.factors.erase(out.factors.begin() + i);
  return out;
}

// Degree of the scheme pi_i(Z): dimension of the subalgebra of Q[t]/(t^c)
// generated by the affine coordinates of factor i.
int local_degree(const JetScheme& z, int i);
// dim <pi_i(Z)> + 1: rank of the factor's Taylor coefficient vectors.
int span_rank(const JetScheme& z, int i);

// Affine normalization of one factor's jet: divides every coordinate by the
// first coordinate with a nonzero constant term. Returns that coordinate index.
int normalize_factor(std::vector<QPoly>& coords, int order);

// Embedded vector of a JetScheme span coordinate list: sum_j b_j * v_j.
PSTensor combine(const std::vector<PSTensor>& vectors, const std::vector<Rational>& coeffs);

}  // namespace secant3
