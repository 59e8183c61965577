#include "secant3/jet.hpp"

#include "secant3/linalg.hpp"

namespace secant3 {

ExactPoint JetScheme::support() const {
  ExactPoint o;
  for (const auto& f : factors) {
    std::vector<Rational> v;
    for (const auto& c : f) v.push_back(c.coeff(0));
    o.factors.push_back(std::move(v));
  }
  return o;
}

std::vector<std::vector<Rational>> JetScheme::factor_taylor(int i) const {
  const auto& f = factors.at(static_cast<std::size_t>(i));
  std::vector<std::vector<Rational>> out(static_cast<std::size_t>(order), std::vector<Rational>(f.size()));
  for (int m = 0; m < order; ++m)
    for (std::size_t j = 0; j < f.size(); ++j) out[static_cast<std::size_t>(m)][j] = f[j].coeff(static_cast<std::size_t>(m));
  return out;
}

JetScheme make_jet(Format format, int order, std::vector<std::vector<QPoly>> factors) {
  require(order >= 1, ErrorKind::InvalidInput, "jet order must be positive");
  require(static_cast<int>(factors.size()) == format.k(), ErrorKind::InvalidInput, "jet has wrong factor count");
  for (int i = 0; i < format.k(); ++i) {
    auto& f = factors[static_cast<std::size_t>(i)];
    require(static_cast<int>(f.size()) == format.dim(i) + 1, ErrorKind::InvalidInput,
            "jet factor " + std::to_string(i + 1) + " has wrong coordinate count");
    bool unit = false;
    for (auto& c : f) {
      c = c.truncate(static_cast<std::size_t>(order));
      unit = unit || !is_zero(c.coeff(0));
    }
    require(unit, ErrorKind::InvalidInput, "jet factor " + std::to_string(i + 1) + " has zero support vector");
  }
  return JetScheme{std::move(format), order, std::move(factors)};
}

JetScheme make_jet_at(Format format, int order, std::vector<std::vector<QPoly>> factors, const Rational& base) {
  if (!is_zero(base))
    for (auto& f : factors)
      for (auto& c : f) c = taylor_shift(c, base);
  return make_jet(std::move(format), order, std::move(factors));
}

JetScheme truncate_jet(const JetScheme& z, int order) {
  require(order >= 1 && order <= z.order, ErrorKind::InvalidInput, "sub-jet order out of range");
  return make_jet(z.format, order, z.factors);
}

int MultiJet::total_degree() const {
  int c = 0;
  for (const auto& z : components) c += z.order;
  return c;
}

void validate(const MultiJet& mj) {
  require(!mj.components.empty(), ErrorKind::InvalidInput, "multijet has no components");
  for (const auto& z : mj.components)
    require(z.format == mj.components.front().format, ErrorKind::InvalidInput, "multijet components differ in format");
  for (std::size_t a = 0; a < mj.components.size(); ++a)
    for (std::size_t b = a + 1; b < mj.components.size(); ++b)
      require(!projectively_equal(mj.components[a].support(), mj.components[b].support()), ErrorKind::InvalidInput,
              "multijet components share a support point");
}

std::vector<std::vector<Rational>> jet_vector_coeffs(const JetScheme& z) {
  const auto order = static_cast<std::size_t>(z.order);
  std::vector<std::vector<Series>> coords;
  for (const auto& f : z.factors) {
    std::vector<Series> v;
    for (const auto& c : f) v.emplace_back(c, order);
    coords.push_back(std::move(v));
  }
  const auto series = embed_ring(z.format, coords);
  std::vector<std::vector<Rational>> out(order, std::vector<Rational>(series.size()));
  for (std::size_t idx = 0; idx < series.size(); ++idx)
    for (std::size_t m = 0; m < order; ++m) out[m][idx] = series[idx].value.coeff(m);
  return out;
}

std::vector<PSTensor> jet_vectors(const JetScheme& z) {
  std::vector<PSTensor> out;
  for (auto& v : jet_vector_coeffs(z)) out.push_back({z.format, std::move(v)});
  return out;
}

std::vector<QPoly> project_factor(const JetScheme& z, int i) {
  require(i >= 0 && i < z.format.k(), ErrorKind::InvalidInput, "factor index out of range");
  return z.factors[static_cast<std::size_t>(i)];
}

JetScheme drop_factor(const JetScheme& z, int i) {
  require(i >= 0 && i < z.format.k(), ErrorKind::InvalidInput, "factor index out of range");
  auto f = z.factors;
  f.erase(f.begin() + i);
  return make_jet(z.format.without_factor(i), z.order, std::move(f));
}

int normalize_factor(std::vector<QPoly>& coords, int order) {
  int unit = -1;
  for (std::size_t j = 0; j < coords.size() && unit < 0; ++j)
    if (!is_zero(coords[j].coeff(0))) unit = static_cast<int>(j);
  require(unit >= 0, ErrorKind::InvalidInput, "jet factor has no unit coordinate");
  const auto ord = static_cast<std::size_t>(order);
  const QPoly inv = inverse_series(coords[static_cast<std::size_t>(unit)], ord);
  for (auto& c : coords) c = mul_trunc(c, inv, ord);
  return unit;
}

int local_degree(const JetScheme& z, int i) {
  auto coords = project_factor(z, i);
  const int unit = normalize_factor(coords, z.order);
  const auto ord = static_cast<std::size_t>(z.order);
  // Generators of the maximal ideal part of the subalgebra.
  std::vector<QPoly> gens;
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (static_cast<int>(j) == unit) continue;
    QPoly g = coords[j] - QPoly(std::vector<Rational>{coords[j].coeff(0)});
    if (!g.zero()) gens.push_back(std::move(g));
  }
  auto as_vector = [&](const QPoly& p) {
    std::vector<Rational> v(ord);
    for (std::size_t m = 0; m < ord; ++m) v[m] = p.coeff(m);
    return v;
  };
  std::vector<QPoly> basis{QPoly(1)};
  std::vector<std::vector<Rational>> vecs{as_vector(basis.front())};
  auto try_add = [&](const QPoly& p) {
    if (p.zero()) return false;
    auto v = as_vector(p);
    if (solve_in_span(v, vecs)) return false;
    vecs.push_back(std::move(v));
    basis.push_back(p);
    return true;
  };
  for (const auto& g : gens) try_add(g);
  // Close under multiplication by the generators.
  for (std::size_t idx = 0; idx < basis.size() && basis.size() < ord; ++idx)
    for (const auto& g : gens) try_add(mul_trunc(basis[idx], g, ord));
  return static_cast<int>(basis.size());
}

int span_rank(const JetScheme& z, int i) {
  return static_cast<int>(mat_rank(Matrix<Rational>::from_rows(z.factor_taylor(i))));
}

PSTensor combine(const std::vector<PSTensor>& vectors, const std::vector<Rational>& coeffs) {
  require(!vectors.empty() && vectors.size() == coeffs.size(), ErrorKind::InvalidInput, "combine: size mismatch");
  PSTensor out{vectors.front().format, std::vector<Rational>(vectors.front().coeffs.size())};
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (is_zero(coeffs[j])) continue;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += coeffs[j] * vectors[j].coeffs[i];
  }
  return out;
}

}  // namespace secant3
