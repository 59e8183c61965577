#include "secant3/poly.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "secant3/errors.hpp"

namespace secant3 {

CPoly to_approx(const QPoly& p) { return CPoly(to_complex(p.coeffs())); }

namespace {

template <class T>
Poly<T> mul_trunc_impl(const Poly<T>& a, const Poly<T>& b, std::size_t order) {
  if (a.zero() || b.zero() || order == 0) return Poly<T>();
  const std::size_t n = std::min(order, a.coeffs().size() + b.coeffs().size() - 1);
  std::vector<T> out(n, T(0));
  const auto& ac = a.coeffs();
  const auto& bc = b.coeffs();
  for (std::size_t i = 0; i < ac.size() && i < n; ++i)
    for (std::size_t j = 0; j < bc.size() && i + j < n; ++j) out[i + j] += ac[i] * bc[j];
  return Poly<T>(std::move(out));
}

template <class T>
Poly<T> inverse_series_impl(const Poly<T>& a, std::size_t order) {
  require(!a.zero() && !is_zero(a.coeff(0)), ErrorKind::InvalidInput, "series inverse needs a unit constant term");
  std::vector<T> inv(order, T(0));
  const T c0inv = T(1) / a.coeff(0);
  if (order > 0) inv[0] = c0inv;
  for (std::size_t n = 1; n < order; ++n) {
    T acc(0);
    for (std::size_t j = 1; j <= n; ++j) acc += a.coeff(j) * inv[n - j];
    inv[n] = -acc * c0inv;
  }
  return Poly<T>(std::move(inv));
}

}  // namespace

QPoly mul_trunc(const QPoly& a, const QPoly& b, std::size_t order) { return mul_trunc_impl(a, b, order); }
CPoly mul_trunc(const CPoly& a, const CPoly& b, std::size_t order) { return mul_trunc_impl(a, b, order); }
QPoly inverse_series(const QPoly& a, std::size_t order) { return inverse_series_impl(a, order); }
CPoly inverse_series(const CPoly& a, std::size_t order) { return inverse_series_impl(a, order); }

QPoly taylor_shift(const QPoly& p, const Rational& shift) {
  // Horner in the ring Q[t]: p(t+u) = (...(c_n (t+u) + c_{n-1})(t+u) + ...).
  const QPoly lin(std::vector<Rational>{shift, Rational(1)});
  QPoly acc;
  const auto& c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * lin + QPoly(std::vector<Rational>{c[i]});
  return acc;
}

QDivision divide(const QPoly& a, const QPoly& b) {
  require(!b.zero(), ErrorKind::InvalidInput, "polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {QPoly(), a};
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db + 1));
  const Rational lead_inv = 1 / b.leading();
  for (int i = a.degree() - db; i >= 0; --i) {
    const Rational q = rem[static_cast<std::size_t>(i + db)] * lead_inv;
    quo[static_cast<std::size_t>(i)] = q;
    if (is_zero(q)) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i + j)] -= q * b.coeff(static_cast<std::size_t>(j));
  }
  return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

QPoly make_monic(const QPoly& p) {
  if (p.zero()) return p;
  return p * Rational(1 / p.leading());
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.zero()) {
    QPoly r = divide(x, y).remainder;
    x = std::move(y);
    y = make_monic(r);
  }
  return make_monic(x);
}

bool is_square_free(const BinaryForm<Rational>& form) {
  if (form.poly.zero()) return false;
  if (form.multiplicity_at_infinity() > 1) return false;
  if (form.poly.degree() <= 1) return true;
  return gcd(form.poly, form.poly.derivative()).degree() == 0;
}

Real chordal_distance(const HomParam& a, const HomParam& b) {
  const Real na = std::sqrt(std::norm(a.s) + std::norm(a.t));
  const Real nb = std::sqrt(std::norm(b.s) + std::norm(b.t));
  return std::abs(a.s * b.t - a.t * b.s) / (na * nb);
}

std::vector<Complex> roots(const CPoly& p) {
  const int n = p.degree();
  require(n >= 0, ErrorKind::InvalidInput, "roots of the zero polynomial");
  for (const auto& c : p.coeffs()) require(is_finite(c), ErrorKind::InvalidInput, "non-finite polynomial coefficient");
  if (n == 0) return {};
  std::vector<Complex> out;
  // Zero roots factor out exactly.
  const int v = p.valuation();
  for (int i = 0; i < v; ++i) out.emplace_back(0, 0);
  const int m = n - v;
  if (m == 0) return out;
  const auto& c = p.coeffs();
  const Complex lead = c[static_cast<std::size_t>(n)];
  if (m == 1) {
    out.push_back(-c[static_cast<std::size_t>(v)] / lead);
    return out;
  }
  using M = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
  M companion = M::Zero(m, m);
  for (int i = 1; i < m; ++i) companion(i, i - 1) = 1;
  for (int i = 0; i < m; ++i) companion(i, m - 1) = -c[static_cast<std::size_t>(v + i)] / lead;
  Eigen::ComplexEigenSolver<M> solver(companion, false);
  require(solver.info() == Eigen::Success, ErrorKind::RetriesExhausted, "companion eigenvalue iteration failed");
  const CPoly deriv = p.derivative();
  for (int i = 0; i < m; ++i) {
    Complex z = solver.eigenvalues()(i);
    // A few Newton steps on the original polynomial; stop if a step grows.
    for (int it = 0; it < 4; ++it) {
      const Complex f = p(z);
      const Complex df = deriv(z);
      if (df == Complex{}) break;
      const Complex step = f / df;
      if (!is_finite(step) || std::abs(step) > 1e-3L * (1 + std::abs(z))) break;
      z -= step;
      if (std::abs(step) <= 1e-21L * (1 + std::abs(z))) break;
    }
    out.push_back(z);
  }
  return out;
}

std::vector<HomParam> roots(const BinaryForm<Complex>& form) {
  require(!form.poly.zero(), ErrorKind::InvalidInput, "roots of the zero binary form");
  std::vector<HomParam> out;
  for (const auto& z : roots(form.poly)) out.push_back({Complex(1, 0), z});
  for (int i = 0; i < form.multiplicity_at_infinity(); ++i) out.push_back({Complex(0, 0), Complex(1, 0)});
  return out;
}

}  // namespace secant3
