#pragma once

#include <cstddef>
#include <vector>

#include "secant3/scalar.hpp"

namespace secant3 {

// Dense univariate polynomial, ascending coefficients. The zero polynomial has
// no coefficients; degree() is -1 for it.
template <class T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(int constant) : c_{T(constant)} { trim(); }  // NOLINT(google-explicit-constructor)

  static Poly monomial(std::size_t degree, const T& coeff = T(1)) {
    std::vector<T> c(degree + 1);
    c[degree] = coeff;
    return Poly(std::move(c));
  }

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool zero() const noexcept { return c_.empty(); }
  const std::vector<T>& coeffs() const noexcept { return c_; }
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
  const T& leading() const { return c_.back(); }

  T operator()(const T& x) const {
    T acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    trim();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const T& s) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.zero() || b.zero()) return Poly();
    std::vector<T> out(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(out));
  }
  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  bool operator==(const Poly& o) const { return c_ == o.c_; }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<T> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<long>(i));
    return Poly(std::move(d));
  }

  // Coefficients below t^order.
  Poly truncate(std::size_t order) const {
    if (c_.size() <= order) return *this;
    return Poly(std::vector<T>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(order)));
  }

  // Lowest index with a nonzero coefficient; -1 for zero.
  int valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!is_zero(c_[i])) return static_cast<int>(i);
    return -1;
  }

 private:
  void trim() {
    while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
  }
  std::vector<T> c_;
};

using QPoly = Poly<Rational>;
using CPoly = Poly<Complex>;

CPoly to_approx(const QPoly& p);

// Truncated power-series arithmetic mod t^order.
QPoly mul_trunc(const QPoly& a, const QPoly& b, std::size_t order);
CPoly mul_trunc(const CPoly& a, const CPoly& b, std::size_t order);
// Inverse of a series with nonzero constant term, mod t^order.
QPoly inverse_series(const QPoly& a, std::size_t order);
CPoly inverse_series(const CPoly& a, std::size_t order);
// p(t + shift), exact Taylor shift.
QPoly taylor_shift(const QPoly& p, const Rational& shift);

struct QDivision {
  QPoly quotient, remainder;
};
QDivision divide(const QPoly& a, const QPoly& b);
// Monic gcd over Q; gcd(0,0) = 0.
QPoly gcd(const QPoly& a, const QPoly& b);
QPoly make_monic(const QPoly& p);

// A binary form of formal degree `degree` stored dehomogenized at s = 1:
// coefficient i multiplies s^(degree-i) t^i. Roots at t = infinity have
// multiplicity degree - poly.degree().
template <class T>
struct BinaryForm {
  int degree = 0;
  Poly<T> poly;
  int multiplicity_at_infinity() const { return poly.zero() ? degree : degree - poly.degree(); }
};

// Square-free over the algebraic closure, counting the root at infinity.
bool is_square_free(const BinaryForm<Rational>& form);

// Projective parameter (s : t). Normalized so that s == 1, or (0 : 1) for infinity.
struct HomParam {
  Complex s{1, 0};
  Complex t{0, 0};
  bool at_infinity() const { return s == Complex{}; }
};

// Chordal distance on P^1, in [0, 1].
Real chordal_distance(const HomParam& a, const HomParam& b);

// Complex roots of a polynomial (companion matrix eigenvalues, Newton-polished).
std::vector<Complex> roots(const CPoly& p);
// Roots of a binary form with infinity included; size == degree.
std::vector<HomParam> roots(const BinaryForm<Complex>& form);

}  // namespace secant3
