// Serial references against their OpenMP counterparts. Run with
// OMP_NUM_THREADS=N to vary the team size.

#include <benchmark/benchmark.h>

#include "secant3/curves.hpp"
#include "secant3/flatten.hpp"
#include "secant3/kernels.hpp"
#include "secant3/linalg.hpp"
#include "secant3/random.hpp"

using namespace secant3;

namespace {

Matrix<Integer> random_integer_matrix(std::size_t rows, std::size_t cols) {
  Rng rng(11);
  Matrix<Rational> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.rational(50, 7);
  auto a = integer_rows(m);
  // A usable pivot for the first step.
  if (a(0, 0) == 0) a(0, 0) = 1;
  return a;
}

std::vector<std::vector<Rational>> random_factors(int k, int len) {
  Rng rng(12);
  std::vector<std::vector<Rational>> f(static_cast<std::size_t>(k));
  for (auto& v : f)
    for (int i = 0; i < len; ++i) v.push_back(rng.rational(9, 5));
  return f;
}

PSTensor rank_three_tensor(const Format& f) {
  Rng rng(13);
  PSTensor p{f, std::vector<Rational>(f.size())};
  for (int m = 0; m < 3; ++m) {
    ExactPoint x;
    for (int i = 0; i < f.k(); ++i) {
      std::vector<Rational> v;
      for (int c = 0; c <= f.dim(i); ++c) v.push_back(rng.rational(5));
      v[0] += 11;
      x.factors.push_back(v);
    }
    const auto e = embed(f, x);
    for (std::size_t i = 0; i < f.size(); ++i) p.coeffs[i] += e.coeffs[i];
  }
  return p;
}

CurveMap moment_curve(int k, int degree) {
  Rng rng(14);
  const Format f(std::vector<int>(static_cast<std::size_t>(k), 2), std::vector<int>(static_cast<std::size_t>(k), 2));
  CurveMap h{f, {}};
  for (int i = 0; i < k; ++i) {
    FactorMap m;
    m.degree = degree;
    for (int j = 0; j <= 2; ++j) {
      std::vector<Rational> c;
      for (int e = 0; e <= degree; ++e) c.push_back(rng.rational(4));
      m.coords.push_back(QPoly(c));
    }
    m.coords[0] = QPoly::monomial(0);
    m.coords[1] = QPoly::monomial(static_cast<std::size_t>(degree));
    h.factors.push_back(m);
  }
  return h;
}

template <bool Parallel>
void BM_BareissStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto base = random_integer_matrix(n, n);
  for (auto _ : state) {
    state.PauseTiming();
    auto a = base;
    state.ResumeTiming();
    if constexpr (Parallel)
      kernels::bareiss_step(a, 0, 0, Integer(1), true);
    else
      kernels::bareiss_step_serial(a, 0, 0, Integer(1), true);
    benchmark::DoNotOptimize(a);
  }
}

template <bool Parallel>
void BM_Kronecker(benchmark::State& state) {
  const auto f = random_factors(static_cast<int>(state.range(0)), 8);
  for (auto _ : state) {
    auto v = Parallel ? kernels::kronecker(f) : kernels::kronecker_serial(f);
    benchmark::DoNotOptimize(v);
  }
}

template <bool Parallel>
void BM_WeightedSum(benchmark::State& state) {
  const int terms = static_cast<int>(state.range(0));
  std::vector<Rational> w;
  std::vector<std::vector<std::vector<Rational>>> factors;
  Rng rng(15);
  for (int m = 0; m < terms; ++m) {
    w.push_back(rng.rational(5, 3));
    factors.push_back(random_factors(4, 6));
  }
  for (auto _ : state) {
    auto v = Parallel ? kernels::weighted_kronecker_sum<Rational>(w, factors)
                      : kernels::weighted_kronecker_sum_serial<Rational>(w, factors);
    benchmark::DoNotOptimize(v);
  }
}

template <bool Parallel>
void BM_Linearize(benchmark::State& state) {
  const auto h = moment_curve(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    auto l = Parallel ? linearize(h) : linearize_serial(h);
    benchmark::DoNotOptimize(l);
  }
}

template <bool Parallel>
void BM_FlatteningReport(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto p = rank_three_tensor(Format(std::vector<int>(static_cast<std::size_t>(k), 1),
                                          std::vector<int>(static_cast<std::size_t>(k), 2)));
  for (auto _ : state) {
    auto r = Parallel ? flattening_report(p) : flattening_report_serial(p);
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

BENCHMARK(BM_BareissStep<false>)->Name("bareiss_step/serial")->Arg(64)->Arg(160);
BENCHMARK(BM_BareissStep<true>)->Name("bareiss_step/openmp")->Arg(64)->Arg(160);
BENCHMARK(BM_Kronecker<false>)->Name("kronecker/serial")->Arg(4)->Arg(5);
BENCHMARK(BM_Kronecker<true>)->Name("kronecker/openmp")->Arg(4)->Arg(5);
BENCHMARK(BM_WeightedSum<false>)->Name("weighted_sum/serial")->Arg(3)->Arg(9);
BENCHMARK(BM_WeightedSum<true>)->Name("weighted_sum/openmp")->Arg(3)->Arg(9);
BENCHMARK(BM_Linearize<false>)->Name("linearize/serial")->Arg(3)->Arg(4);
BENCHMARK(BM_Linearize<true>)->Name("linearize/openmp")->Arg(3)->Arg(4);
BENCHMARK(BM_FlatteningReport<false>)->Name("flattening_report/serial")->Arg(4)->Arg(5);
BENCHMARK(BM_FlatteningReport<true>)->Name("flattening_report/openmp")->Arg(4)->Arg(5);

BENCHMARK_MAIN();
