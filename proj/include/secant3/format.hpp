#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "secant3/errors.hpp"
#include "secant3/kernels.hpp"
#include "secant3/scalar.hpp"

namespace secant3 {

// Exponent tuples of length `nvars` summing to `degree`, sorted
// lexicographically descending: (d,0,..,0) first, (0,..,0,d) last.
std::vector<std::vector<int>> monomial_exponents(int nvars, int degree);
// Position of `exps` in the order above.
std::size_t monomial_rank(std::span<const int> exps);
std::size_t binomial(int n, int k);

// Shape (k; n_1..n_k; d_1..d_k) of S^{d_1}V_1 (x) ... (x) S^{d_k}V_k.
// Coefficients are indexed in mixed radix over per-factor monomial ranks,
// factor 1 most significant.
class Format {
 public:
  Format(std::vector<int> dims, std::vector<int> degrees);

  int k() const noexcept { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const noexcept { return dims_; }
  const std::vector<int>& degrees() const noexcept { return degrees_; }
  int dim(int i) const { return dims_.at(static_cast<std::size_t>(i)); }
  int degree(int i) const { return degrees_.at(static_cast<std::size_t>(i)); }

  std::size_t factor_size(int i) const { return tables_->exponents.at(static_cast<std::size_t>(i)).size(); }
  const std::vector<std::vector<int>>& exponents(int i) const {
    return tables_->exponents.at(static_cast<std::size_t>(i));
  }
  // Number of coefficients, N + 1.
  std::size_t size() const noexcept { return tables_->size; }
  std::size_t N() const noexcept { return tables_->size - 1; }
  // Segre ambient dimension, defined when every degree is 1.
  std::optional<std::size_t> M() const;
  int degree_sum() const;

  std::size_t global_index(std::span<const std::size_t> factor_indices) const;
  std::vector<std::size_t> factor_indices(std::size_t global) const;

  Format without_factor(int i) const;

  bool operator==(const Format& o) const { return dims_ == o.dims_ && degrees_ == o.degrees_; }

 private:
  struct Tables {
    std::vector<std::vector<std::vector<int>>> exponents;
    std::size_t size = 1;
  };
  std::vector<int> dims_, degrees_;
  std::shared_ptr<const Tables> tables_;
};

// Point of P^{n_1} x ... x P^{n_k} given by homogeneous coordinate vectors.
template <class T>
struct ProductPoint {
  std::vector<std::vector<T>> factors;
  bool operator==(const ProductPoint&) const = default;
};

using ExactPoint = ProductPoint<Rational>;
using ApproxPoint = ProductPoint<Complex>;

template <class T>
void check_point(const Format& format, const ProductPoint<T>& x) {
  require(static_cast<int>(x.factors.size()) == format.k(), ErrorKind::InvalidInput, "point has wrong factor count");
  for (int i = 0; i < format.k(); ++i) {
    const auto& v = x.factors[static_cast<std::size_t>(i)];
    require(static_cast<int>(v.size()) == format.dim(i) + 1, ErrorKind::InvalidInput,
            "point factor " + std::to_string(i + 1) + " has wrong length");
    bool nonzero = false;
    for (const auto& c : v) nonzero = nonzero || !is_zero(c);
    require(nonzero, ErrorKind::InvalidInput, "point factor " + std::to_string(i + 1) + " is zero");
  }
}

ApproxPoint to_approx(const ExactPoint& x);

// Exact projective equality, factor by factor.
bool projectively_equal(const ExactPoint& a, const ExactPoint& b);
// Numeric projective equality: every factor pair within relative distance tol.
bool projectively_equal(const ApproxPoint& a, const ApproxPoint& b, Real tol);

// Dense coefficient vector of a point of P^N in the Format's index order.
template <class T>
struct Tensor {
  Format format;
  std::vector<T> coeffs;
};

using PSTensor = Tensor<Rational>;
using ApproxTensor = Tensor<Complex>;

ApproxTensor to_approx(const PSTensor& p);
bool is_zero(const PSTensor& p);

// Values of all degree-d monomials (in exponent order) at a coordinate vector.
template <class T>
std::vector<T> monomial_values(const std::vector<T>& x, const std::vector<std::vector<int>>& exps) {
  const int d = exps.empty() ? 0 : [&] {
    int s = 0;
    for (int e : exps.front()) s += e;
    return s;
  }();
  // powers[j][e] = x_j^e
  std::vector<std::vector<T>> powers(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    powers[j].reserve(static_cast<std::size_t>(d) + 1);
    powers[j].push_back(T(1));
    for (int e = 1; e <= d; ++e) powers[j].push_back(powers[j].back() * x[j]);
  }
  std::vector<T> out;
  out.reserve(exps.size());
  for (const auto& alpha : exps) {
    T acc(1);
    for (std::size_t j = 0; j < alpha.size(); ++j)
      if (alpha[j] > 0) acc *= powers[j][static_cast<std::size_t>(alpha[j])];
    out.push_back(std::move(acc));
  }
  return out;
}

// Per-factor monomial vectors of a point; embed() is their tensor product.
template <class T>
std::vector<std::vector<T>> embedding_factors(const Format& format, const ProductPoint<T>& x) {
  std::vector<std::vector<T>> out;
  out.reserve(x.factors.size());
  for (int i = 0; i < format.k(); ++i)
    out.push_back(monomial_values(x.factors[static_cast<std::size_t>(i)], format.exponents(i)));
  return out;
}

// Segre-Veronese embedding, monomial convention (no multinomial weights).
template <class T>
Tensor<T> embed(const Format& format, const ProductPoint<T>& x) {
  check_point(format, x);
  return {format, kernels::kronecker(embedding_factors(format, x))};
}

// Same map over an arbitrary commutative ring of coordinate values (series,
// polynomials); no nonzero check.
template <class R>
std::vector<R> embed_ring(const Format& format, const std::vector<std::vector<R>>& coords) {
  std::vector<std::vector<R>> f;
  for (int i = 0; i < format.k(); ++i)
    f.push_back(monomial_values(coords.at(static_cast<std::size_t>(i)), format.exponents(i)));
  return kernels::kronecker(f);
}

}  // namespace secant3
