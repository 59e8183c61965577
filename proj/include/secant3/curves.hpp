#pragma once

#include <cstdint>
#include <optional>
#include <type_traits>
#include <vector>

#include "secant3/decomposition.hpp"
#include "secant3/format.hpp"
#include "secant3/jet.hpp"
#include "secant3/matrix.hpp"
#include "secant3/poly.hpp"

namespace secant3 {

// n+1 binary forms of a common degree, each stored dehomogenized at s = 1:
// coords[j].coeff(i) multiplies s^(degree-i) t^i.
struct FactorMap {
  int degree = 0;
  std::vector<QPoly> coords;

  template <class T>
  std::vector<T> eval(const T& s, const T& t) const;
  // Jet of the map at (1:0) to order c, as affine polynomials in t.
  std::vector<QPoly> jet(int order) const;
};

template <class T>
std::vector<T> FactorMap::eval(const T& s, const T& t) const {
  // spow[i] = s^i, tpow[i] = t^i
  std::vector<T> spow{T(1)}, tpow{T(1)};
  for (int i = 0; i < degree; ++i) {
    spow.push_back(spow.back() * s);
    tpow.push_back(tpow.back() * t);
  }
  std::vector<T> out;
  out.reserve(coords.size());
  for (const auto& c : coords) {
    T acc(0);
    for (int i = 0; i <= c.degree(); ++i) {
      const auto& a = c.coeffs()[static_cast<std::size_t>(i)];
      if (is_zero(a)) continue;
      T term = spow[static_cast<std::size_t>(degree - i)] * tpow[static_cast<std::size_t>(i)];
      if constexpr (std::is_same_v<T, Rational>)
        acc += a * term;
      else
        acc += to_complex(a) * term;
    }
    out.push_back(acc);
  }
  return out;
}

// Morphism P^1 -> P^{n_1} x ... x P^{n_k}.
struct CurveMap {
  Format format;
  std::vector<FactorMap> factors;

  std::vector<int> multidegree() const;
  // Degree of nu o h, sum c_i d_i.
  int embedded_degree() const;
  ApproxPoint eval(const HomParam& u) const;
  ExactPoint eval(const Rational& s, const Rational& t) const;
};

void validate(const CurveMap& h);
// gcd of each factor's forms is 1.
bool is_basepoint_free(const FactorMap& f);
bool is_basepoint_free(const CurveMap& h);

struct PiecewiseCurve {
  std::vector<CurveMap> components;
  int embedded_degree() const;
};

struct JetExtension {
  int e = 0;
  FactorMap map;
  // The jet equals unit * map (affine, s = 1) coordinatewise.
  QPoly unit;
};

// Lemma c1: a single-factor morphism of degree e <= c whose order-c jet at 0
// is the given one.
JetExtension extend_jet_to_map(const std::vector<QPoly>& jet, int order);

// Degree-1 map P^1 -> P^1 with affine Taylor data y0 + y1 t + (y2/2) t^2.
FactorMap mobius_from_3jet(const Rational& y0, const Rational& y1, const Rational& y2);

// Smooth conic parametrization through a 3-jet in P^2 (three coordinate
// polynomials), matching the jet exactly mod t^3.
FactorMap conic_through_3jet(const std::vector<QPoly>& jet);

// Product map through an order-3 jet, multidegree entries in {1, 2}.
CurveMap curve_through_jet3(const JetScheme& z);

// embed(h(s,t)) = lambda * (s^a, s^(a-1) t, .., t^a).
struct Linearization {
  Matrix<Rational> lambda;
  int a = 0;
  std::size_t span_dim() const;  // rank(lambda) - 1
};

Linearization linearize(const CurveMap& h);
Linearization linearize_serial(const CurveMap& h);

// Order-c jet vectors of nu o h at t = 0 without forming lambda.
std::vector<std::vector<Rational>> curve_jet_vectors(const CurveMap& h, int order);

// Largest kappa >= 2 with every factor a form in (s^kappa, t^kappa), if any.
std::optional<int> power_substitution(const CurveMap& h);

struct SectionOptions {
  std::uint64_t seed = 0;
  int retries = 32;
  Real tol = 1e-8L;
};

// Random hyperplane through p, intersected with each component; p is solved
// in the span of the section points.
Decomposition hyperplane_section_decompose(const PiecewiseCurve& curve, const PSTensor& p,
                                           const SectionOptions& options = {});

}  // namespace secant3
