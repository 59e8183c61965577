#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace secant3 {

// Exact field: GMP rationals, kept canonical (lowest terms, positive denominator).
using Integer = mpz_class;
using Rational = mpq_class;

// Numeric stand-in for the algebraic closure. long double carries a 64-bit
// mantissa on x86-64, which is the default working precision.
using Real = long double;
using Complex = std::complex<Real>;

enum class Field { Exact, Approx };

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);

// Decimal text with enough digits to round-trip a long double.
std::string to_string(Real value);
Real parse_real(std::string_view text);

Real to_real(const Integer& value);
Real to_real(const Rational& value);
inline Complex to_complex(const Rational& value) { return {to_real(value), 0.0L}; }
inline Complex to_complex(const Complex& value) { return value; }

bool is_finite(const Complex& value);

inline Real magnitude(const Rational& value) { return to_real(abs(value)); }
inline Real magnitude(const Complex& value) { return std::abs(value); }

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }
inline bool is_zero(const Complex& value) { return value == Complex{}; }

// Working precision in mantissa bits. 64 is native; smaller values round
// numeric results at module boundaries. Values outside [24, 64] are rejected.
int working_precision();
void set_working_precision(int bits);
Real round_to_precision(Real value);
Complex round_to_precision(const Complex& value);

template <class T>
std::vector<Complex> to_complex(const std::vector<T>& values) {
  std::vector<Complex> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(to_complex(v));
  return out;
}

}  // namespace secant3
