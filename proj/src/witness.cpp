#include "secant3/witness.hpp"

#include <cmath>

#include "secant3/linalg.hpp"
#include "secant3/random.hpp"

namespace secant3 {

namespace {

// a + b t, c + d t with ad - bc != 0 and coefficients in [-5, 5].
std::vector<QPoly> random_mobius(Rng& rng) {
  for (;;) {
    const long a = rng.uniform_int(-5, 5), b = rng.uniform_int(-5, 5);
    const long c = rng.uniform_int(-5, 5), d = rng.uniform_int(-5, 5);
    if (a * d - b * c == 0) continue;
    return {QPoly(std::vector<Rational>{a, b}), QPoly(std::vector<Rational>{c, d})};
  }
}

Real exact_relative_residual(const PSTensor& p, const Decomposition& dec) {
  const auto sum = evaluate_exact(dec);
  std::vector<Rational> diff(p.coeffs.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = sum.coeffs[i] - p.coeffs[i];
  return norm(diff) / norm(p.coeffs);
}

}  // namespace

WitnessBundle make_witness(int k, int x, std::uint64_t seed, const EngineOptions& options) {
  require(k >= 3 && x >= 3 && x <= k - 1, ErrorKind::InvalidRange,
          "witness needs 3 <= x <= k-1 (got k=" + std::to_string(k) + ", x=" + std::to_string(x) + ")");
  const Format f(std::vector<int>(static_cast<std::size_t>(k), 1), std::vector<int>(static_cast<std::size_t>(k), 1));
  Rng rng(seed);
  const std::vector<std::vector<QPoly>> origin(static_cast<std::size_t>(k), {QPoly(1), QPoly(0)});
  WitnessBundle out{k, x, f, PSTensor{f, {}}, Jet3{make_jet(f, 1, origin)}, {}, make_exact(f, {}), {}, {}};
  for (;;) {
    std::vector<std::vector<QPoly>> coords;
    for (int i = 0; i <= x; ++i) coords.push_back(random_mobius(rng));
    out.padded_factors.clear();
    for (int i = x + 1; i < k; ++i) {
      std::vector<Rational> o{rng.nonzero_int(4), rng.rational(4)};
      coords.push_back({QPoly(std::vector<Rational>{o[0]}), QPoly(std::vector<Rational>{o[1]})});
      out.padded_factors.push_back(std::move(o));
    }
    out.presentation = Jet3{make_jet(f, 3, coords)};
    out.span_coeffs = {rng.rational(4, 3), rng.rational(4, 3), Rational(rng.nonzero_int(4))};
    out.p = combine(jet_vectors(out.presentation.jet), out.span_coeffs);
    if (minimalize_presentation(out.presentation.jet, out.p) == 3) break;
  }
  auto res = decompose_sigma3(out.presentation, out.p, options);
  require(res.decomposition.size() == static_cast<std::size_t>(x), ErrorKind::VerificationFailed,
          "witness decomposition has size " + std::to_string(res.decomposition.size()) + ", expected " +
              std::to_string(x));
  require(res.certificate.flattening_max_rank == 3, ErrorKind::VerificationFailed,
          "witness flattening ranks do not certify border rank 3");
  if (x >= 4) res.certificate.notes.push_back("rank lower bound for x >= 4 is not machine-checked");
  res.certificate.slope = residual_slope(out.presentation.jet, out.p, default_epsilons());
  out.decomposition = std::move(res.decomposition);
  out.certificate = std::move(res.certificate);
  return out;
}

BorderFamily border_family(const JetScheme& jet, const PSTensor& p, const Rational& epsilon) {
  require(jet.order == 3, ErrorKind::InvalidInput, "border families need an order-3 jet");
  require(sgn(epsilon) > 0, ErrorKind::InvalidInput, "epsilon must be positive");
  require(!is_zero(p), ErrorKind::InvalidInput, "p is zero");
  const Format& f = jet.format;
  const auto v = jet_vector_coeffs(jet);
  const auto b = solve_in_span(p.coeffs, v);
  require(b.has_value(), ErrorKind::NotInSpan, "p is not in the span of the jet");
  BorderFamily out{epsilon, make_exact(f, {}), 0};
  if (minimalize_presentation(jet, p) == 1) {
    const auto e = embed(f, jet.support());
    const auto mu = solve_in_span(p.coeffs, {e.coeffs});
    out.decomposition = make_exact(f, {ExactTerm{(*mu)[0], jet.support()}});
    return out;
  }
  // Vandermonde system sum_j lambda_j (eps z_j)^m = b_m, m = 0, 1, 2.
  std::vector<std::vector<Rational>> cols;
  std::vector<ExactPoint> points;
  for (long z : kFamilyNodes) {
    const Rational t = epsilon * z;
    cols.push_back({Rational(1), t, t * t});
    ExactPoint x;
    for (const auto& factor : jet.factors) {
      std::vector<Rational> coords;
      for (const auto& c : factor) coords.push_back(c(t));
      x.factors.push_back(std::move(coords));
    }
    points.push_back(std::move(x));
  }
  const auto lambda = solve_in_span(*b, cols);
  require(lambda.has_value(), ErrorKind::InvalidInput, "family nodes are degenerate");
  std::vector<ExactTerm> terms;
  for (std::size_t j = 0; j < 3; ++j) terms.push_back({(*lambda)[j], points[j]});
  try {
    out.decomposition = make_exact(f, std::move(terms));
  } catch (const Error&) {
    fail(ErrorKind::InvalidInput, "a family point vanishes in some factor; choose another epsilon");
  }
  out.residual = exact_relative_residual(p, out.decomposition);
  return out;
}

std::vector<Rational> default_epsilons(int count) {
  std::vector<Rational> out;
  Rational e(1);
  for (int i = 0; i < count; ++i) {
    e /= 10;
    out.push_back(e);
  }
  return out;
}

Real residual_slope(const JetScheme& jet, const PSTensor& p, const std::vector<Rational>& epsilons) {
  require(epsilons.size() >= 2, ErrorKind::InvalidInput, "slope fit needs at least two epsilons");
  Real sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<Real>(epsilons.size());
  for (const auto& e : epsilons) {
    const Real r = border_family(jet, p, e).residual;
    require(r > 0, ErrorKind::InvalidInput, "residual is exactly zero; no slope to fit");
    const Real lx = std::log(to_real(e)), ly = std::log(r);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace secant3
