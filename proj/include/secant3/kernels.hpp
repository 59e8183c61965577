#pragma once

// Data-parallel inner loops. Each OpenMP kernel has a serial reference that
// the test suite compares against and the benchmark times side by side.

#include <cstddef>
#include <span>
#include <vector>

#include "secant3/matrix.hpp"
#include "secant3/scalar.hpp"

namespace secant3::kernels {

// Below this many scalar updates the parallel kernels run on one thread.
inline constexpr std::size_t kParallelThreshold = 4096;

// One fraction-free Gauss-Jordan pivot step on an integer matrix:
//   a(i,j) <- (pivot * a(i,j) - a(i,col) * a(row,j)) / previous_pivot
// for every row i in the update range. Rows above `row` are included when
// `reduce_above` is set. The division is exact (entries remain minors).
void bareiss_step(Matrix<Integer>& a, std::size_t row, std::size_t col, const Integer& previous_pivot,
                  bool reduce_above);
void bareiss_step_serial(Matrix<Integer>& a, std::size_t row, std::size_t col, const Integer& previous_pivot,
                         bool reduce_above);

// Mixed-radix tensor product of per-factor vectors, factor 0 most significant.
template <class T>
std::vector<T> kronecker_serial(const std::vector<std::vector<T>>& factors) {
  std::vector<T> out{T(1)};
  for (const auto& f : factors) {
    std::vector<T> next;
    next.reserve(out.size() * f.size());
    for (const auto& a : out)
      for (const auto& b : f) next.push_back(a * b);
    out = std::move(next);
  }
  return out;
}

template <class T>
std::vector<T> kronecker(const std::vector<std::vector<T>>& factors) {
  std::size_t total = 1;
  for (const auto& f : factors) total *= f.size();
  if (total < kParallelThreshold) return kronecker_serial(factors);
  std::vector<T> out(total);
  const std::size_t k = factors.size();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(total); ++idx) {
    std::size_t rest = static_cast<std::size_t>(idx);
    T acc(1);
    for (std::size_t f = k; f-- > 0;) {
      const std::size_t digit = rest % factors[f].size();
      rest /= factors[f].size();
      acc *= factors[f][digit];
    }
    out[static_cast<std::size_t>(idx)] = acc;
  }
  return out;
}

// sum_m weights[m] * (factors[m][0] (x) factors[m][1] (x) ...), all terms
// sharing the same per-factor lengths.
template <class T>
std::vector<T> weighted_kronecker_sum_serial(std::span<const T> weights,
                                             const std::vector<std::vector<std::vector<T>>>& factors) {
  std::vector<T> out;
  for (std::size_t m = 0; m < weights.size(); ++m) {
    const auto term = kronecker_serial(factors[m]);
    if (out.empty()) out.assign(term.size(), T(0));
    for (std::size_t i = 0; i < term.size(); ++i) out[i] += weights[m] * term[i];
  }
  return out;
}

template <class T>
std::vector<T> weighted_kronecker_sum(std::span<const T> weights,
                                      const std::vector<std::vector<std::vector<T>>>& factors) {
  if (weights.empty()) return {};
  std::size_t total = 1;
  for (const auto& f : factors.front()) total *= f.size();
  if (total * weights.size() < kParallelThreshold) return weighted_kronecker_sum_serial(weights, factors);
  std::vector<T> out(total);
  const std::size_t k = factors.front().size();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(total); ++idx) {
    T sum(0);
    for (std::size_t m = 0; m < weights.size(); ++m) {
      std::size_t rest = static_cast<std::size_t>(idx);
      T acc = weights[m];
      for (std::size_t f = k; f-- > 0;) {
        const std::size_t digit = rest % factors[m][f].size();
        rest /= factors[m][f].size();
        acc *= factors[m][f][digit];
      }
      sum += acc;
    }
    out[static_cast<std::size_t>(idx)] = sum;
  }
  return out;
}

}  // namespace secant3::kernels
