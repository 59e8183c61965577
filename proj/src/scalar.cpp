#include "secant3/scalar.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "secant3/errors.hpp"

namespace secant3 {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::NotAnEmbedding: return "NotAnEmbedding";
    case ErrorKind::DegenerateJet: return "DegenerateJet";
    case ErrorKind::AutarkyViolation: return "AutarkyViolation";
    case ErrorKind::RetriesExhausted: return "RetriesExhausted";
    case ErrorKind::NotInSpan: return "NotInSpan";
    case ErrorKind::NotMinimal: return "NotMinimal";
    case ErrorKind::InvalidPresentation: return "InvalidPresentation";
    case ErrorKind::IndependenceFailure: return "IndependenceFailure";
    case ErrorKind::NotATangent: return "NotATangent";
    case ErrorKind::InvalidRange: return "InvalidRange";
  }
  return "Unknown";
}

namespace {

bool valid_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

std::atomic<int> g_precision{64};

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  require(valid_integer_text(num) && valid_integer_text(den), ErrorKind::InvalidInput,
          "malformed rational '" + std::string(text) + "'");
  Integer n(std::string(num.front() == '+' ? num.substr(1) : num));
  Integer d(std::string(den.front() == '+' ? den.substr(1) : den));
  require(d != 0, ErrorKind::InvalidInput, "zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_string(Real value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.21Lg", value);
  return buf;
}

Real parse_real(std::string_view text) {
  std::string s(text);
  char* end = nullptr;
  const Real v = std::strtold(s.c_str(), &end);
  require(end != s.c_str() && *end == '\0', ErrorKind::InvalidInput, "malformed decimal '" + s + "'");
  require(std::isfinite(v), ErrorKind::InvalidInput, "non-finite decimal '" + s + "'");
  return v;
}

Real to_real(const Integer& value) {
  // Keep the top 64 bits so the long double mantissa is fully used.
  const auto bits = static_cast<long>(mpz_sizeinbase(value.get_mpz_t(), 2));
  if (bits <= 64) {
    Integer a = abs(value);
    unsigned long long mag = 0;
    mpz_export(&mag, nullptr, -1, sizeof mag, 0, 0, a.get_mpz_t());
    const Real r = static_cast<Real>(mag);
    return sgn(value) < 0 ? -r : r;
  }
  Integer top = abs(value) >> static_cast<mp_bitcnt_t>(bits - 64);
  unsigned long long mag = 0;
  mpz_export(&mag, nullptr, -1, sizeof mag, 0, 0, top.get_mpz_t());
  const Real r = std::ldexp(static_cast<Real>(mag), static_cast<int>(bits - 64));
  return sgn(value) < 0 ? -r : r;
}

Real to_real(const Rational& value) {
  const Real num = to_real(value.get_num());
  const Real den = to_real(value.get_den());
  if (std::isfinite(num) && std::isfinite(den)) return num / den;
  // Extreme exponents: rescale both sides before dividing.
  const auto nb = static_cast<long>(mpz_sizeinbase(value.get_num_mpz_t(), 2));
  const auto db = static_cast<long>(mpz_sizeinbase(value.get_den_mpz_t(), 2));
  Rational scaled = value;
  const long shift = db - nb;
  if (shift > 0)
    mpq_mul_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), static_cast<mp_bitcnt_t>(shift));
  else
    mpq_div_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), static_cast<mp_bitcnt_t>(-shift));
  return std::ldexp(to_real(scaled.get_num()) / to_real(scaled.get_den()), static_cast<int>(-shift));
}

bool is_finite(const Complex& value) { return std::isfinite(value.real()) && std::isfinite(value.imag()); }

int working_precision() { return g_precision.load(); }

void set_working_precision(int bits) {
  require(bits >= 24 && bits <= 64, ErrorKind::InvalidInput,
          "working precision must be between 24 and 64 bits, got " + std::to_string(bits));
  g_precision.store(bits);
}

Real round_to_precision(Real value) {
  const int bits = working_precision();
  if (bits >= 64 || value == 0 || !std::isfinite(value)) return value;
  int exponent = 0;
  const Real mantissa = std::frexp(value, &exponent);
  return std::ldexp(std::nearbyint(std::ldexp(mantissa, bits)), exponent - bits);
}

Complex round_to_precision(const Complex& value) {
  return {round_to_precision(value.real()), round_to_precision(value.imag())};
}

}  // namespace secant3
