#include "secant3/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "secant3/kernels.hpp"
#include "secant3/linalg.hpp"

namespace secant3 {

Decomposition make_exact(Format format, std::vector<ExactTerm> terms) {
  for (const auto& t : terms) check_point(format, t.point);
  Decomposition d{std::move(format), Field::Exact, std::move(terms), {}, {}};
  return d;
}

Decomposition make_approx(Format format, std::vector<ApproxTerm> terms) {
  for (const auto& t : terms) {
    check_point(format, t.point);
    require(is_finite(t.coeff), ErrorKind::InvalidInput, "non-finite decomposition coefficient");
    for (const auto& f : t.point.factors)
      for (const auto& c : f) require(is_finite(c), ErrorKind::InvalidInput, "non-finite point coordinate");
  }
  Decomposition d{std::move(format), Field::Approx, {}, std::move(terms), {}};
  return d;
}

Decomposition to_approx(const Decomposition& dec) {
  if (dec.field == Field::Approx) return dec;
  std::vector<ApproxTerm> terms;
  for (const auto& t : dec.exact_terms) terms.push_back({to_complex(t.coeff), to_approx(t.point)});
  auto out = make_approx(dec.format, std::move(terms));
  out.params = dec.params;
  return out;
}

namespace {

template <class T>
std::vector<T> evaluate_terms(const Format& format, const std::vector<Term<T>>& terms) {
  if (terms.empty()) return std::vector<T>(format.size(), T(0));
  std::vector<T> weights;
  std::vector<std::vector<std::vector<T>>> factors;
  for (const auto& t : terms) {
    weights.push_back(t.coeff);
    factors.push_back(embedding_factors(format, t.point));
  }
  return kernels::weighted_kronecker_sum(std::span<const T>(weights), factors);
}

// Scalar mu with embed(y) = mu * embed(x) for projectively equal x, y.
template <class T>
T embed_ratio(const Format& format, const ProductPoint<T>& x, const ProductPoint<T>& y) {
  T mu(1);
  for (int i = 0; i < format.k(); ++i) {
    const auto& u = x.factors[static_cast<std::size_t>(i)];
    const auto& v = y.factors[static_cast<std::size_t>(i)];
    std::size_t j = 0;
    for (std::size_t m = 1; m < u.size(); ++m)
      if (magnitude(u[m]) > magnitude(u[j])) j = m;
    const T r = v[j] / u[j];
    for (int e = 0; e < format.degree(i); ++e) mu *= r;
  }
  return mu;
}

bool same_point(const ExactPoint& a, const ExactPoint& b, Real) { return projectively_equal(a, b); }
bool same_point(const ApproxPoint& a, const ApproxPoint& b, Real tol) { return projectively_equal(a, b, tol); }

template <class T>
void merge_terms(const Format& format, std::vector<Term<T>>& terms, std::vector<HomParam>& params, Real tol) {
  const bool keep_params = params.size() == terms.size();
  std::vector<Term<T>> out;
  std::vector<HomParam> out_params;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    bool merged = false;
    for (auto& t : out)
      if (same_point(t.point, terms[j].point, tol)) {
        t.coeff += terms[j].coeff * embed_ratio(format, t.point, terms[j].point);
        merged = true;
        break;
      }
    if (!merged) {
      out.push_back(terms[j]);
      if (keep_params) out_params.push_back(params[j]);
    }
  }
  std::vector<Term<T>> kept;
  std::vector<HomParam> kept_params;
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (is_zero(out[j].coeff)) continue;
    kept.push_back(std::move(out[j]));
    if (keep_params) kept_params.push_back(out_params[j]);
  }
  terms = std::move(kept);
  params = keep_params ? std::move(kept_params) : std::vector<HomParam>{};
}

}  // namespace

PSTensor evaluate_exact(const Decomposition& dec) {
  require(dec.field == Field::Exact, ErrorKind::InvalidInput, "decomposition is not exact");
  return {dec.format, evaluate_terms(dec.format, dec.exact_terms)};
}

ApproxTensor evaluate(const Decomposition& dec) {
  if (dec.field == Field::Exact) return to_approx(evaluate_exact(dec));
  return {dec.format, evaluate_terms(dec.format, dec.approx_terms)};
}

void merge_duplicates(Decomposition& dec, Real tol) {
  if (dec.field == Field::Exact)
    merge_terms(dec.format, dec.exact_terms, dec.params, tol);
  else
    merge_terms(dec.format, dec.approx_terms, dec.params, tol);
}

Verification verify_decomposition(const PSTensor& p, const Decomposition& dec, VerifyMode mode, Real tol,
                                  bool throw_on_failure) {
  require(dec.format == p.format, ErrorKind::InvalidInput, "decomposition format differs from tensor format");
  require(p.coeffs.size() == p.format.size(), ErrorKind::InvalidInput, "tensor coefficient count mismatch");
  Verification v;
  v.size = dec.size();
  if (mode == VerifyMode::Exact && dec.field == Field::Exact) {
    v.mode = VerifyMode::Exact;
    const auto sum = evaluate_exact(dec);
    std::vector<Rational> diff(p.coeffs.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = sum.coeffs[i] - p.coeffs[i];
    v.passed = sum.coeffs == p.coeffs;
    const Real pn = norm(p.coeffs);
    v.residual = v.passed ? 0 : norm(diff) / (pn > 0 ? pn : 1);
  } else {
    if (mode == VerifyMode::Exact) v.note = "exact check requested on a numeric decomposition; ran numeric check";
    v.mode = VerifyMode::Numeric;
    const auto sum = evaluate(dec);
    const auto target = to_complex(p.coeffs);
    std::vector<Complex> diff(target.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = sum.coeffs[i] - target[i];
    const Real pn = norm(target);
    v.residual = norm(diff) / (pn > 0 ? pn : 1);
    v.passed = std::isfinite(static_cast<double>(v.residual)) && v.residual <= tol;
  }
  if (!v.passed && throw_on_failure) {
    Error e(ErrorKind::VerificationFailed, "decomposition residual " + to_string(v.residual) + " exceeds tolerance");
    e.residual = v.residual;
    throw e;
  }
  return v;
}

std::optional<SparseSolve> solve_sparse(const std::vector<Complex>& target,
                                        const std::vector<std::vector<Complex>>& columns, Real tol) {
  const Real unlimited = std::numeric_limits<Real>::infinity();
  auto fit = [&](const std::vector<std::size_t>& idx) {
    std::vector<std::vector<Complex>> gens;
    for (auto j : idx) gens.push_back(columns[j]);
    return solve_in_span(target, gens, unlimited);
  };
  std::vector<std::size_t> kept(columns.size());
  for (std::size_t j = 0; j < kept.size(); ++j) kept[j] = j;
  auto sol = fit(kept);
  if (!sol || !(sol->residual <= tol)) return std::nullopt;
  bool removed = true;
  while (removed && kept.size() > 1) {
    removed = false;
    std::vector<std::size_t> order(kept.size());
    for (std::size_t m = 0; m < order.size(); ++m) order[m] = m;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return std::abs(sol->coefficients[x]) * norm(columns[kept[x]]) <
             std::abs(sol->coefficients[y]) * norm(columns[kept[y]]);
    });
    for (auto m : order) {
      auto trial = kept;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(m));
      auto s2 = fit(trial);
      if (s2 && s2->residual <= tol) {
        kept = std::move(trial);
        sol = std::move(s2);
        removed = true;
        break;
      }
    }
  }
  return SparseSolve{kept, sol->coefficients, sol->residual};
}

const char* to_string(VerifyMode mode) { return mode == VerifyMode::Exact ? "exact" : "numeric"; }

}  // namespace secant3
