#include "secant3/kernels.hpp"

namespace secant3::kernels {

namespace {

void update_row(Matrix<Integer>& a, std::size_t i, std::size_t row, std::size_t col, const Integer& pivot,
                const Integer& previous_pivot) {
  const Integer factor = a(i, col);
  auto target = a.row(i);
  const auto source = a.row(row);
  Integer tmp;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (j == col) continue;
    mpz_mul(target[j].get_mpz_t(), target[j].get_mpz_t(), pivot.get_mpz_t());
    if (sgn(factor) != 0 && sgn(source[j]) != 0) {
      mpz_mul(tmp.get_mpz_t(), factor.get_mpz_t(), source[j].get_mpz_t());
      mpz_sub(target[j].get_mpz_t(), target[j].get_mpz_t(), tmp.get_mpz_t());
    }
    if (previous_pivot != 1) mpz_divexact(target[j].get_mpz_t(), target[j].get_mpz_t(), previous_pivot.get_mpz_t());
  }
  target[col] = 0;
}

}  // namespace

void bareiss_step_serial(Matrix<Integer>& a, std::size_t row, std::size_t col, const Integer& previous_pivot,
                         bool reduce_above) {
  const Integer pivot = a(row, col);
  const std::size_t first = reduce_above ? 0 : row + 1;
  for (std::size_t i = first; i < a.rows(); ++i) {
    if (i == row) continue;
    update_row(a, i, row, col, pivot, previous_pivot);
  }
}

void bareiss_step(Matrix<Integer>& a, std::size_t row, std::size_t col, const Integer& previous_pivot,
                  bool reduce_above) {
  const std::size_t first = reduce_above ? 0 : row + 1;
  const std::size_t work = (a.rows() - first) * a.cols();
  if (work < kParallelThreshold) {
    bareiss_step_serial(a, row, col, previous_pivot, reduce_above);
    return;
  }
  const Integer pivot = a(row, col);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(first); i < static_cast<std::ptrdiff_t>(a.rows()); ++i) {
    if (static_cast<std::size_t>(i) == row) continue;
    update_row(a, static_cast<std::size_t>(i), row, col, pivot, previous_pivot);
  }
}

}  // namespace secant3::kernels
