#pragma once

#include <cstdint>
#include <vector>

#include "secant3/decomposition.hpp"
#include "secant3/engine.hpp"
#include "secant3/jet.hpp"

namespace secant3 {

// Border rank 3, rank x tensor on the Segre variety of (P^1)^k.
struct WitnessBundle {
  int k = 0;
  int x = 0;
  Format format;
  PSTensor p;
  Jet3 presentation;
  std::vector<Rational> span_coeffs;  // p = sum span_coeffs[j] * v_j
  Decomposition decomposition;
  Certificate certificate;
  // Fixed coordinates of factors x+2..k, which the jet does not move.
  std::vector<std::vector<Rational>> padded_factors;
};

// Requires 3 <= x <= k-1; otherwise InvalidRange.
WitnessBundle make_witness(int k, int x, std::uint64_t seed, const EngineOptions& options = {});

struct BorderFamily {
  Rational epsilon;
  Decomposition decomposition;  // exact, at most 3 terms
  Real residual = 0;            // relative, computed exactly then rounded
};

inline constexpr long kFamilyNodes[3] = {1, -1, 2};

// Three curve points at parameters eps * z_j whose combination matches the
// order-3 expansion of p; the residual is O(eps).
BorderFamily border_family(const JetScheme& jet, const PSTensor& p, const Rational& epsilon);

// eps = 10^-1 .. 10^-count.
std::vector<Rational> default_epsilons(int count = 4);

// Least-squares slope of log(residual) against log(eps).
Real residual_slope(const JetScheme& jet, const PSTensor& p, const std::vector<Rational>& epsilons);

}  // namespace secant3
