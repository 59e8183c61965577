#include "secant3/sylvester.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "secant3/linalg.hpp"
#include "secant3/random.hpp"

namespace secant3 {

std::vector<Complex> rnc_point(int a, const HomParam& u) {
  std::vector<Complex> spow{Complex(1)}, tpow{Complex(1)};
  for (int i = 0; i < a; ++i) {
    spow.push_back(spow.back() * u.s);
    tpow.push_back(tpow.back() * u.t);
  }
  std::vector<Complex> out(static_cast<std::size_t>(a) + 1);
  for (int j = 0; j <= a; ++j) out[static_cast<std::size_t>(j)] = spow[static_cast<std::size_t>(a - j)] * tpow[static_cast<std::size_t>(j)];
  return out;
}

namespace {

bool pairwise_separated(const std::vector<HomParam>& params, Real threshold = 1e-7L) {
  for (std::size_t i = 0; i < params.size(); ++i)
    for (std::size_t j = i + 1; j < params.size(); ++j)
      if (chordal_distance(params[i], params[j]) < threshold) return false;
  return true;
}

BinaryForm<Rational> form_of(const std::vector<Rational>& g) {
  return {static_cast<int>(g.size()) - 1, QPoly(g)};
}

// gcd of the kernel forms (with the root at infinity) is square-free, and the
// system is not a single non-square-free form: then a general member is
// square-free.
bool has_square_free_member(const std::vector<std::vector<Rational>>& kernel, int s) {
  if (kernel.empty()) return false;
  if (kernel.size() == 1) return is_square_free(form_of(kernel.front()));
  QPoly g;
  int inf = s;
  for (const auto& v : kernel) {
    QPoly p(v);
    g = gcd(g, p);
    inf = std::min(inf, s - p.degree());
  }
  return is_square_free({g.degree() + inf, g});
}

// Deterministic candidates first: basis elements, the sum of all, two ramps;
// then seeded random integer combinations.
std::vector<Rational> kernel_candidate(const std::vector<std::vector<Rational>>& kernel, int index, Rng& rng) {
  const std::size_t dim = kernel.size();
  std::vector<long> w(dim, 0);
  const auto idx = static_cast<std::size_t>(index);
  if (idx < dim) {
    w[idx] = 1;
  } else if (idx == dim) {
    for (auto& x : w) x = 1;
  } else if (idx == dim + 1) {
    for (std::size_t b = 0; b < dim; ++b) w[b] = static_cast<long>(b) + 1;
  } else if (idx == dim + 2) {
    for (std::size_t b = 0; b < dim; ++b) w[b] = (b % 2 == 0 ? 1 : -1) * static_cast<long>(b / 2 + 1);
  } else {
    for (auto& x : w) x = rng.uniform_int(-7, 7);
  }
  std::vector<Rational> g(kernel.front().size());
  for (std::size_t b = 0; b < dim; ++b)
    if (w[b] != 0)
      for (std::size_t j = 0; j < g.size(); ++j) g[j] += w[b] * kernel[b][j];
  return g;
}

std::vector<std::vector<Rational>> catalecticant_kernel(const std::vector<Rational>& q, int s) {
  return kernel_basis(catalecticant(q, s));
}

}  // namespace

std::optional<RncDecomposition> fit_rnc(const std::vector<Complex>& q, const std::vector<HomParam>& params, Real tol) {
  const int a = static_cast<int>(q.size()) - 1;
  std::vector<std::vector<Complex>> cols;
  std::vector<Real> scale;
  for (const auto& u : params) {
    auto c = rnc_point(a, u);
    const Real n = norm(c);
    if (!(n > 0) || !std::isfinite(static_cast<double>(n))) return std::nullopt;
    for (auto& x : c) x /= n;
    cols.push_back(std::move(c));
    scale.push_back(n);
  }
  const auto sol = solve_in_span(q, cols, std::numeric_limits<Real>::infinity());
  if (!sol || !(sol->residual <= tol)) return std::nullopt;
  RncDecomposition out;
  out.a = a;
  out.residual = sol->residual;
  for (std::size_t m = 0; m < params.size(); ++m) {
    out.params.push_back({round_to_precision(params[m].s), round_to_precision(params[m].t)});
    out.coeffs.push_back(round_to_precision(sol->coefficients[m] / scale[m]));
  }
  return out;
}

int curve_rank(const std::vector<Rational>& q) {
  const int a = static_cast<int>(q.size()) - 1;
  require(a >= 1, ErrorKind::InvalidInput, "curve degree must be at least 1");
  bool nonzero = false;
  for (const auto& x : q) nonzero = nonzero || !is_zero(x);
  require(nonzero, ErrorKind::InvalidInput, "zero point");
  for (int s = 1; s <= a; ++s)
    if (has_square_free_member(catalecticant_kernel(q, s), s)) return s;
  return a + 1;  // not reached: the size-a kernel is a hyperplane of forms
}

RncDecomposition sylvester_general(const std::vector<Rational>& q, const SylvesterOptions& options) {
  const int s = curve_rank(q);
  const int a = static_cast<int>(q.size()) - 1;
  const auto kernel = s <= a ? catalecticant_kernel(q, s) : std::vector<std::vector<Rational>>{};
  const auto qc = to_complex(q);
  Rng rng(options.seed);
  const int deterministic = static_cast<int>(kernel.size()) + 3;
  std::optional<RncDecomposition> best;
  for (int idx = 0; idx < deterministic + options.retries; ++idx) {
    const auto g = kernel_candidate(kernel, idx, rng);
    const auto form = form_of(g);
    if (form.poly.zero() || !is_square_free(form)) continue;
    const auto params = roots(BinaryForm<Complex>{form.degree, to_approx(form.poly)});
    if (static_cast<int>(params.size()) != s || !pairwise_separated(params)) continue;
    auto fit = fit_rnc(qc, params, options.tol);
    if (fit && (!best || fit->residual < best->residual)) best = std::move(fit);
    if (best && best->residual <= options.tol * 1e-3L) break;
  }
  if (!best) {
    Error e(ErrorKind::RetriesExhausted, "no numerically stable square-free kernel form of degree " + std::to_string(s));
    e.seed = options.seed;
    throw e;
  }
  return *best;
}

RncDecomposition sylvester_from_jet(int a, int c, const std::vector<Rational>& b, const SylvesterOptions& options) {
  require(a >= 1, ErrorKind::InvalidInput, "curve degree must be at least 1");
  require(c >= 1 && c <= a + 1, ErrorKind::InvalidInput, "jet order must lie in [1, a+1]");
  require(static_cast<int>(b.size()) == c, ErrorKind::InvalidInput, "jet coefficient count differs from the order");
  require(!is_zero(b.back()), ErrorKind::NotMinimal, "top jet coefficient vanishes; reduce the jet order");
  std::vector<Rational> q(static_cast<std::size_t>(a) + 1);
  for (int j = 0; j < c; ++j) q[static_cast<std::size_t>(j)] = b[static_cast<std::size_t>(j)];
  if (c == 1) {
    RncDecomposition out;
    out.a = a;
    out.params.push_back(HomParam{});
    out.coeffs.push_back(to_complex(b[0]));
    return out;
  }
  if (2 * c > a + 2) return sylvester_general(q, options);

  // Kernel forms at size a+2-c are G = L mod t^c with L = 1/reverse(b).
  // Take G = P * (L / P mod t^c) with P of degree a+3-2c and chosen roots.
  const auto cc = static_cast<std::size_t>(c);
  std::vector<Complex> rev(cc);
  for (std::size_t m = 0; m < cc; ++m) rev[m] = to_complex(b[cc - 1 - m]);
  const CPoly L = inverse_series(CPoly(rev), cc);
  const int np = a + 3 - 2 * c;
  const int size = a + 2 - c;
  const auto qc = to_complex(q);
  Rng rng(options.seed);
  static constexpr Real kRadii[] = {1.0L, 0.9L, 1.15L, 0.75L, 1.4L, 0.6L};
  const int fixed = static_cast<int>(std::size(kRadii)) * 2;
  std::optional<RncDecomposition> best;
  for (int attempt = 0; attempt < fixed + options.retries; ++attempt) {
    // Staggered radii: a regular polygon gives P = 1 - (t/r)^np, which makes
    // L/P mod t^c degenerate whenever the low jet coefficients vanish.
    const Real radius = attempt < fixed ? kRadii[attempt / 2] : 0.0L;
    const Real theta = 0.3141592653589793L + 0.5L * static_cast<Real>(attempt % 2) / static_cast<Real>(np);
    std::vector<HomParam> params;
    CPoly P(1);
    for (int m = 0; m < np; ++m) {
      const Complex rho = attempt < fixed
                              ? std::polar(radius * (1 + 0.13L * m), theta + 2 * std::numbers::pi_v<Real> * m / np)
                              : std::polar(0.5L + rng.uniform01(), 2 * std::numbers::pi_v<Real> * rng.uniform01());
      params.push_back({Complex(1), rho});
      P = P * CPoly(std::vector<Complex>{Complex(1), -Complex(1) / rho});
    }
    const CPoly Q = mul_trunc(L, inverse_series(P, cc), cc);
    if (Q.zero()) continue;
    for (const auto& u : roots(BinaryForm<Complex>{c - 1, Q})) params.push_back(u);
    if (static_cast<int>(params.size()) != size || !pairwise_separated(params)) continue;
    auto fit = fit_rnc(qc, params, options.tol);
    if (fit && (!best || fit->residual < best->residual)) best = std::move(fit);
    if (best && best->residual <= options.tol * 1e-3L) break;
  }
  if (!best) {
    Error e(ErrorKind::RetriesExhausted, "jet Sylvester construction failed for a=" + std::to_string(a) +
                                             ", c=" + std::to_string(c));
    e.seed = options.seed;
    throw e;
  }
  return *best;
}

namespace {

// Scales each factor to unit max-modulus and folds the scales into the coefficient.
void normalize_term(const Format& format, ApproxTerm& term) {
  for (int i = 0; i < format.k(); ++i) {
    auto& v = term.point.factors[static_cast<std::size_t>(i)];
    Complex pivot{};
    for (const auto& x : v)
      if (std::abs(x) > std::abs(pivot)) pivot = x;
    if (pivot == Complex{}) continue;
    for (auto& x : v) x /= pivot;
    for (int e = 0; e < format.degree(i); ++e) term.coeff *= pivot;
  }
}

}  // namespace

Decomposition decompose_via_curve(const CurveMap& h, const PSTensor& p, std::optional<int> jet_order,
                                  const SylvesterOptions& options, CurveLift* lift) {
  validate(h);
  require(h.format == p.format, ErrorKind::InvalidInput, "curve format differs from tensor format");
  CurveLift local;
  CurveLift& out = lift ? *lift : local;
  out.a = h.embedded_degree();
  if (jet_order) {
    const int c = *jet_order;
    require(c >= 1 && c <= out.a + 1, ErrorKind::InvalidInput, "jet order out of range for the curve");
    auto coeffs = solve_in_span(p.coeffs, curve_jet_vectors(h, c));
    require(coeffs.has_value(), ErrorKind::NotInSpan, "p is not in the osculating span of the curve");
    out.q = std::move(*coeffs);
    out.rnc = sylvester_from_jet(out.a, c, out.q, options);
  } else {
    require(out.a >= 1, ErrorKind::InvalidInput, "constant curve");
    const auto lin = linearize(h);
    std::vector<std::vector<Rational>> cols;
    for (std::size_t j = 0; j < lin.lambda.cols(); ++j) cols.push_back(lin.lambda.column(j));
    auto coeffs = solve_in_span(p.coeffs, cols);
    require(coeffs.has_value(), ErrorKind::NotInSpan, "p is not in the span of the curve");
    out.q = std::move(*coeffs);
    out.rnc = sylvester_general(out.q, options);
  }
  std::vector<ApproxTerm> terms;
  for (std::size_t m = 0; m < out.rnc.size(); ++m) {
    ApproxTerm t{out.rnc.coeffs[m], h.eval(out.rnc.params[m])};
    normalize_term(h.format, t);
    terms.push_back(std::move(t));
  }
  auto dec = make_approx(h.format, std::move(terms));
  dec.params = out.rnc.params;
  merge_duplicates(dec);
  return dec;
}

}  // namespace secant3
