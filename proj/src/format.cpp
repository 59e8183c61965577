#include "secant3/format.hpp"

#include <cmath>

namespace secant3 {

std::size_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

std::vector<std::vector<int>> monomial_exponents(int nvars, int degree) {
  std::vector<std::vector<int>> out;
  if (nvars <= 0) return out;
  std::vector<int> cur(static_cast<std::size_t>(nvars), 0);
  // Depth-first with the largest exponent first gives lex-descending order.
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == nvars - 1) {
      cur[static_cast<std::size_t>(pos)] = remaining;
      out.push_back(cur);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      cur[static_cast<std::size_t>(pos)] = e;
      self(self, pos + 1, remaining - e);
    }
  };
  rec(rec, 0, degree);
  return out;
}

std::size_t monomial_rank(std::span<const int> exps) {
  const int m = static_cast<int>(exps.size());
  int remaining = 0;
  for (int e : exps) remaining += e;
  std::size_t rank = 0;
  for (int j = 0; j + 1 < m; ++j) {
    const int tail = m - j - 1;  // variables after position j
    for (int v = remaining; v > exps[static_cast<std::size_t>(j)]; --v)
      rank += binomial(remaining - v + tail - 1, tail - 1);
    remaining -= exps[static_cast<std::size_t>(j)];
  }
  return rank;
}

Format::Format(std::vector<int> dims, std::vector<int> degrees) : dims_(std::move(dims)), degrees_(std::move(degrees)) {
  require(!dims_.empty(), ErrorKind::InvalidInput, "format needs k >= 1");
  require(dims_.size() == degrees_.size(), ErrorKind::InvalidInput, "format: n and d lengths differ");
  auto tables = std::make_shared<Tables>();
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    require(dims_[i] >= 1, ErrorKind::InvalidInput, "format: n_i must be >= 1");
    require(degrees_[i] >= 1, ErrorKind::InvalidInput, "format: d_i must be >= 1");
    tables->exponents.push_back(monomial_exponents(dims_[i] + 1, degrees_[i]));
    const auto fs = tables->exponents.back().size();
    require(tables->size <= (std::size_t{1} << 40) / fs, ErrorKind::CapExceeded, "format too large");
    tables->size *= fs;
  }
  tables_ = std::move(tables);
}

std::optional<std::size_t> Format::M() const {
  std::size_t m = 1;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (degrees_[i] != 1) return std::nullopt;
    m *= static_cast<std::size_t>(dims_[i] + 1);
  }
  return m - 1;
}

int Format::degree_sum() const {
  int s = 0;
  for (int d : degrees_) s += d;
  return s;
}

std::size_t Format::global_index(std::span<const std::size_t> idx) const {
  require(static_cast<int>(idx.size()) == k(), ErrorKind::InvalidInput, "index arity mismatch");
  std::size_t g = 0;
  for (int i = 0; i < k(); ++i) g = g * factor_size(i) + idx[static_cast<std::size_t>(i)];
  return g;
}

std::vector<std::size_t> Format::factor_indices(std::size_t global) const {
  std::vector<std::size_t> idx(static_cast<std::size_t>(k()));
  for (int i = k(); i-- > 0;) {
    idx[static_cast<std::size_t>(i)] = global % factor_size(i);
    global /= factor_size(i);
  }
  return idx;
}

Format Format::without_factor(int i) const {
  require(k() >= 2, ErrorKind::InvalidInput, "cannot drop the only factor");
  require(i >= 0 && i < k(), ErrorKind::InvalidInput, "factor index out of range");
  auto n = dims_;
  auto d = degrees_;
  n.erase(n.begin() + i);
  d.erase(d.begin() + i);
  return Format(std::move(n), std::move(d));
}

ApproxPoint to_approx(const ExactPoint& x) {
  ApproxPoint out;
  for (const auto& f : x.factors) out.factors.push_back(to_complex(f));
  return out;
}

bool projectively_equal(const ExactPoint& a, const ExactPoint& b) {
  if (a.factors.size() != b.factors.size()) return false;
  for (std::size_t i = 0; i < a.factors.size(); ++i) {
    const auto& u = a.factors[i];
    const auto& v = b.factors[i];
    if (u.size() != v.size()) return false;
    for (std::size_t p = 0; p < u.size(); ++p)
      for (std::size_t q = p + 1; q < u.size(); ++q)
        if (u[p] * v[q] != u[q] * v[p]) return false;
  }
  return true;
}

bool projectively_equal(const ApproxPoint& a, const ApproxPoint& b, Real tol) {
  if (a.factors.size() != b.factors.size()) return false;
  for (std::size_t i = 0; i < a.factors.size(); ++i) {
    const auto& u = a.factors[i];
    const auto& v = b.factors[i];
    if (u.size() != v.size()) return false;
    Real nu = 0, nv = 0, cross = 0;
    for (const auto& x : u) nu += std::norm(x);
    for (const auto& x : v) nv += std::norm(x);
    for (std::size_t p = 0; p < u.size(); ++p)
      for (std::size_t q = p + 1; q < u.size(); ++q) cross += std::norm(u[p] * v[q] - u[q] * v[p]);
    if (std::sqrt(cross) > tol * std::sqrt(nu * nv)) return false;
  }
  return true;
}

ApproxTensor to_approx(const PSTensor& p) { return {p.format, to_complex(p.coeffs)}; }

bool is_zero(const PSTensor& p) {
  for (const auto& c : p.coeffs)
    if (!is_zero(c)) return false;
  return true;
}

}  // namespace secant3
