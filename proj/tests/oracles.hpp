#pragma once

// Slow, independent reference computations used as test oracles. Nothing
// here calls the library's elimination or embedding kernels.

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "secant3/format.hpp"
#include "secant3/jet.hpp"
#include "secant3/matrix.hpp"
#include "secant3/poly.hpp"
#include "secant3/random.hpp"

namespace oracle {

using secant3::Matrix;
using secant3::Rational;

// Laplace expansion along the first row.
inline Rational det(const std::vector<std::vector<Rational>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  Rational out = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j] == 0) continue;
    std::vector<std::vector<Rational>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Rational> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(a[i][c]);
      minor.push_back(std::move(row));
    }
    const Rational term = a[0][j] * det(minor);
    out += (j % 2 == 0) ? term : Rational(-term);
  }
  return out;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(r), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask[i]) s.push_back(i);
    out.push_back(std::move(s));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

// Largest r with a nonzero r x r minor.
inline std::size_t rank_by_minors(const Matrix<Rational>& m) {
  for (std::size_t r = std::min(m.rows(), m.cols()); r > 0; --r)
    for (const auto& rows : subsets(m.rows(), r))
      for (const auto& cols : subsets(m.cols(), r)) {
        std::vector<std::vector<Rational>> sub(r, std::vector<Rational>(r));
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) sub[i][j] = m(rows[i], cols[j]);
        if (det(sub) != 0) return r;
      }
  return 0;
}

// Plain Gauss-Jordan over Q on [G | target]; returns one solution or nullopt.
inline std::optional<std::vector<Rational>> gauss_solve(const std::vector<Rational>& target,
                                                        const std::vector<std::vector<Rational>>& gens) {
  const std::size_t n = target.size(), m = gens.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(m + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) a[i][j] = gens[j][i];
    a[i][m] = target[i];
  }
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m && row < n; ++col) {
    std::size_t p = row;
    while (p < n && a[p][col] == 0) ++p;
    if (p == n) continue;
    std::swap(a[p], a[row]);
    const Rational inv = 1 / a[row][col];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || a[i][col] == 0) continue;
      const Rational f = a[i][col];
      for (std::size_t j = 0; j <= m; ++j) a[i][j] -= f * a[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < n; ++i)
    if (a[i][m] != 0) return std::nullopt;
  std::vector<Rational> x(m);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][m];
  return x;
}

// Coefficient at each global index as an explicit product of powers.
template <class T>
std::vector<T> naive_embed(const secant3::Format& f, const secant3::ProductPoint<T>& x) {
  std::vector<T> out(f.size());
  for (std::size_t g = 0; g < f.size(); ++g) {
    const auto idx = f.factor_indices(g);
    T acc(1);
    for (int i = 0; i < f.k(); ++i) {
      const auto& e = f.exponents(i)[idx[static_cast<std::size_t>(i)]];
      for (std::size_t j = 0; j < e.size(); ++j)
        for (int p = 0; p < e[j]; ++p) acc *= x.factors[static_cast<std::size_t>(i)][j];
    }
    out[g] = acc;
  }
  return out;
}

// Full polynomial expansion of every embedded coordinate, then the Taylor
// coefficients below the order.
inline std::vector<std::vector<Rational>> naive_jet_vectors(const secant3::JetScheme& z) {
  const auto& f = z.format;
  std::vector<std::vector<Rational>> out(static_cast<std::size_t>(z.order), std::vector<Rational>(f.size()));
  for (std::size_t g = 0; g < f.size(); ++g) {
    const auto idx = f.factor_indices(g);
    secant3::QPoly acc(1);
    for (int i = 0; i < f.k(); ++i) {
      const auto& e = f.exponents(i)[idx[static_cast<std::size_t>(i)]];
      for (std::size_t j = 0; j < e.size(); ++j)
        for (int p = 0; p < e[j]; ++p) acc = acc * z.factors[static_cast<std::size_t>(i)][j];
    }
    for (int m = 0; m < z.order; ++m) out[static_cast<std::size_t>(m)][g] = acc.coeff(static_cast<std::size_t>(m));
  }
  return out;
}

// Random r x c rational matrix of rank at most `rank` (product of factors).
inline Matrix<Rational> random_low_rank(secant3::Rng& rng, std::size_t r, std::size_t c, std::size_t rank) {
  Matrix<Rational> a(r, rank), b(rank, c), m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < rank; ++j) a(i, j) = rng.rational(4, 3);
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < c; ++j) b(i, j) = rng.rational(4, 3);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t l = 0; l < rank; ++l) m(i, j) += a(i, l) * b(l, j);
  return m;
}

// Classical binary-form rank: r = first catalecticant size with a kernel;
// a 1-dimensional kernel with a repeated root means rank a+2-r.
inline int sylvester_rank_oracle(const std::vector<Rational>& q) {
  const int a = static_cast<int>(q.size()) - 1;
  for (int s = 1; s <= a; ++s) {
    const std::size_t rows = static_cast<std::size_t>(a - s + 1), cols = static_cast<std::size_t>(s) + 1;
    Matrix<Rational> h(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) h(i, j) = q[i + j];
    const std::size_t rk = rank_by_minors(h);
    if (rk == cols) continue;
    if (cols - rk >= 2) return s;
    // Kernel generator from the cofactors of any nonzero maximal minor set.
    std::vector<Rational> g;
    for (const auto& rsel : subsets(rows, rk)) {
      for (std::size_t drop = 0; drop < cols; ++drop) {
        // Solve with column `drop` set to 1 via Gauss on the selected rows.
        std::vector<std::vector<Rational>> gens;
        for (std::size_t j = 0; j < cols; ++j)
          if (j != drop) {
            std::vector<Rational> col;
            for (auto i : rsel) col.push_back(h(i, j));
            gens.push_back(col);
          }
        std::vector<Rational> target;
        for (auto i : rsel) target.push_back(-h(i, drop));
        auto x = gauss_solve(target, gens);
        if (!x) continue;
        g.assign(cols, 0);
        g[drop] = 1;
        std::size_t k = 0;
        for (std::size_t j = 0; j < cols; ++j)
          if (j != drop) g[j] = (*x)[k++];
        bool ok = true;
        for (std::size_t i = 0; i < rows && ok; ++i) {
          Rational acc = 0;
          for (std::size_t j = 0; j < cols; ++j) acc += h(i, j) * g[j];
          ok = acc == 0;
        }
        if (ok) break;
        g.clear();
      }
      if (!g.empty()) break;
    }
    // Square-free test: resultant-free, via gcd(G, G') and the root at infinity.
    secant3::QPoly G(g);
    const int inf = s - G.degree();
    const auto d = secant3::gcd(G, G.derivative());
    const bool square_free = inf <= 1 && (G.degree() <= 1 || d.degree() == 0);
    return square_free ? s : a + 2 - s;
  }
  return a;
}

}  // namespace oracle
