#include "secant3/curves.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>

#include "secant3/kernels.hpp"
#include "secant3/linalg.hpp"
#include "secant3/random.hpp"

namespace secant3 {

std::vector<QPoly> FactorMap::jet(int order) const {
  std::vector<QPoly> out;
  for (const auto& c : coords) out.push_back(c.truncate(static_cast<std::size_t>(order)));
  return out;
}

std::vector<int> CurveMap::multidegree() const {
  std::vector<int> m;
  for (const auto& f : factors) m.push_back(f.degree);
  return m;
}

int CurveMap::embedded_degree() const {
  int a = 0;
  for (int i = 0; i < format.k(); ++i) a += factors[static_cast<std::size_t>(i)].degree * format.degree(i);
  return a;
}

ApproxPoint CurveMap::eval(const HomParam& u) const {
  ApproxPoint x;
  for (const auto& f : factors) x.factors.push_back(f.eval<Complex>(u.s, u.t));
  return x;
}

ExactPoint CurveMap::eval(const Rational& s, const Rational& t) const {
  ExactPoint x;
  for (const auto& f : factors) x.factors.push_back(f.eval<Rational>(s, t));
  return x;
}

bool is_basepoint_free(const FactorMap& f) {
  QPoly g;
  int at_infinity = f.degree;
  for (const auto& c : f.coords) {
    g = gcd(g, c);
    if (!c.zero()) at_infinity = std::min(at_infinity, f.degree - c.degree());
  }
  return !g.zero() && g.degree() == 0 && at_infinity == 0;
}

bool is_basepoint_free(const CurveMap& h) {
  return std::all_of(h.factors.begin(), h.factors.end(), [](const FactorMap& f) { return is_basepoint_free(f); });
}

void validate(const CurveMap& h) {
  require(static_cast<int>(h.factors.size()) == h.format.k(), ErrorKind::InvalidInput, "curve has wrong factor count");
  for (int i = 0; i < h.format.k(); ++i) {
    const auto& f = h.factors[static_cast<std::size_t>(i)];
    require(f.degree >= 0, ErrorKind::InvalidInput, "negative curve degree");
    require(static_cast<int>(f.coords.size()) == h.format.dim(i) + 1, ErrorKind::InvalidInput,
            "curve factor " + std::to_string(i + 1) + " has wrong coordinate count");
    for (const auto& c : f.coords)
      require(c.degree() <= f.degree, ErrorKind::InvalidInput, "curve coordinate exceeds the factor degree");
    require(is_basepoint_free(f), ErrorKind::InvalidInput,
            "curve factor " + std::to_string(i + 1) + " has a base point");
  }
}

int PiecewiseCurve::embedded_degree() const {
  int a = 0;
  for (const auto& c : components) a += c.embedded_degree();
  return a;
}

JetExtension extend_jet_to_map(const std::vector<QPoly>& jet, int order) {
  require(order >= 1, ErrorKind::InvalidInput, "jet order must be positive");
  std::vector<QPoly> f;
  bool unit = false;
  for (const auto& c : jet) {
    f.push_back(c.truncate(static_cast<std::size_t>(order)));
    unit = unit || !is_zero(f.back().coeff(0));
  }
  require(unit, ErrorKind::InvalidInput, "jet has no coordinate with a nonzero constant term");
  // Lifts are f_j homogenized to degree c; their gcd is s^m * G(s,t).
  int m = order;
  QPoly g;
  for (const auto& c : f) {
    if (c.zero()) continue;
    m = std::min(m, order - c.degree());
    g = gcd(g, c);
  }
  JetExtension out;
  out.e = order - m - g.degree();
  out.map.degree = out.e;
  for (const auto& c : f) out.map.coords.push_back(divide(c, g).quotient);
  out.unit = g;
  return out;
}

FactorMap mobius_from_3jet(const Rational& y0, const Rational& y1, const Rational& y2) {
  require(!is_zero(y1), ErrorKind::NotAnEmbedding, "first derivative vanishes; the jet is not an embedding");
  // (y0 + (y1 - y0 r) t) / (1 - r t) matches y0 + y1 t + r y1 t^2.
  const Rational r = y2 / (2 * y1);
  FactorMap m;
  m.degree = 1;
  m.coords.push_back(QPoly(std::vector<Rational>{1, -r}));
  m.coords.push_back(QPoly(std::vector<Rational>{y0, y1 - y0 * r}));
  return m;
}

namespace {

using Vec3 = std::array<Rational, 3>;
// Symmetric matrix entries ordered s00, s01, s02, s11, s12, s22.
using Sym = std::array<Rational, 6>;

Rational bilinear(const Sym& s, const Vec3& x, const Vec3& y) {
  return s[0] * x[0] * y[0] + s[1] * (x[0] * y[1] + x[1] * y[0]) + s[2] * (x[0] * y[2] + x[2] * y[0]) +
         s[3] * x[1] * y[1] + s[4] * (x[1] * y[2] + x[2] * y[1]) + s[5] * x[2] * y[2];
}

std::vector<Rational> bilinear_row(const Vec3& x, const Vec3& y) {
  return {x[0] * y[0],
          x[0] * y[1] + x[1] * y[0],
          x[0] * y[2] + x[2] * y[0],
          x[1] * y[1],
          x[1] * y[2] + x[2] * y[1],
          x[2] * y[2]};
}

Rational det(const Sym& s) {
  return s[0] * (s[3] * s[5] - s[4] * s[4]) - s[1] * (s[1] * s[5] - s[4] * s[2]) + s[2] * (s[1] * s[4] - s[3] * s[2]);
}

// Coefficient tuples over {-2..2}^dim, nonzero, ordered by max-norm then lexicographically.
std::vector<std::vector<int>> combination_grid(std::size_t dim, int bound) {
  std::vector<std::vector<int>> out;
  for (int level = 1; level <= bound; ++level) {
    std::vector<int> c(dim, -level);
    while (true) {
      int mx = 0;
      for (int v : c) mx = std::max(mx, std::abs(v));
      if (mx == level) out.push_back(c);
      std::size_t i = dim;
      while (i-- > 0) {
        if (c[i] < level) {
          ++c[i];
          break;
        }
        c[i] = -level;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
  }
  // Prefer few nonzero entries and positive signs inside each level.
  std::stable_sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    auto key = [](const std::vector<int>& v) {
      int mx = 0, nz = 0, neg = 0;
      for (int x : v) {
        mx = std::max(mx, std::abs(x));
        nz += x != 0;
        neg += x < 0;
      }
      return std::array<int, 3>{mx, nz, neg};
    };
    return key(a) < key(b);
  });
  return out;
}

}  // namespace

FactorMap conic_through_3jet(const std::vector<QPoly>& jet) {
  require(jet.size() == 3, ErrorKind::InvalidInput, "conic construction needs a jet into P^2");
  std::array<Vec3, 3> F;
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t j = 0; j < 3; ++j) F[m][j] = jet[j].coeff(m);
  {
    std::vector<std::vector<Rational>> rows;
    for (const auto& v : F) rows.emplace_back(v.begin(), v.end());
    require(mat_rank(Matrix<Rational>::from_rows(rows)) == 3, ErrorKind::DegenerateJet,
            "the 3-jet spans at most a line");
  }
  // Q(f(t)) = 0 mod t^3 on the six conic coefficients.
  std::vector<std::vector<Rational>> eqs{bilinear_row(F[0], F[0]), bilinear_row(F[0], F[1])};
  {
    auto a = bilinear_row(F[1], F[1]);
    auto b = bilinear_row(F[0], F[2]);
    for (std::size_t j = 0; j < 6; ++j) a[j] += 2 * b[j];
    eqs.push_back(std::move(a));
  }
  const auto kernel = kernel_basis(Matrix<Rational>::from_rows(eqs));
  std::optional<Sym> conic;
  for (const auto& combo : combination_grid(kernel.size(), 2)) {
    Sym s{};
    for (std::size_t b = 0; b < kernel.size(); ++b)
      for (std::size_t j = 0; j < 6; ++j) s[j] += combo[b] * kernel[b][j];
    if (!is_zero(det(s))) {
      conic = s;
      break;
    }
  }
  require(conic.has_value(), ErrorKind::DegenerateJet, "no smooth conic found through the jet");
  const Sym& S = *conic;
  // Reparametrize by the unit 1 + u1 t + u2 t^2 so that the quadratic lift
  // lies on the conic identically.
  const Rational u1 = bilinear(S, F[1], F[2]) / bilinear(S, F[0], F[2]);
  Vec3 g0;
  for (std::size_t j = 0; j < 3; ++j) g0[j] = F[2][j] + u1 * F[1][j];
  const Rational u2 = -bilinear(S, g0, g0) / (2 * bilinear(S, g0, F[0]));
  FactorMap h;
  h.degree = 2;
  for (std::size_t j = 0; j < 3; ++j)
    h.coords.push_back(QPoly(std::vector<Rational>{F[0][j], F[1][j] + u1 * F[0][j], g0[j] + u2 * F[0][j]}));
  return h;
}

namespace {

// Degree-2 extension with the smaller e among the raw and the normalized jet.
FactorMap ramified_extension(const std::vector<QPoly>& coords, int order) {
  auto raw = extend_jet_to_map(coords, order);
  auto normalized = coords;
  normalize_factor(normalized, order);
  auto norm_ext = extend_jet_to_map(normalized, order);
  return norm_ext.e < raw.e ? norm_ext.map : raw.map;
}

FactorMap mobius_on_p1(std::vector<QPoly> coords) {
  const int unit = normalize_factor(coords, 3);
  const auto other = static_cast<std::size_t>(1 - unit);
  const QPoly& y = coords[other];
  auto m = mobius_from_3jet(y.coeff(0), y.coeff(1), 2 * y.coeff(2));
  FactorMap out;
  out.degree = 1;
  out.coords.resize(2);
  out.coords[static_cast<std::size_t>(unit)] = m.coords[0];
  out.coords[other] = m.coords[1];
  return out;
}

}  // namespace

CurveMap curve_through_jet3(const JetScheme& z) {
  require(z.order == 3, ErrorKind::InvalidInput, "curve_through_jet3 needs an order-3 jet");
  CurveMap h{z.format, {}};
  for (int i = 0; i < z.format.k(); ++i) {
    const int ld = local_degree(z, i);
    require(ld != 1, ErrorKind::AutarkyViolation,
            "factor " + std::to_string(i + 1) + " has local degree 1; drop it by autarky first");
    const auto coords = project_factor(z, i);
    if (ld == 2) {
      h.factors.push_back(ramified_extension(coords, 3));
      continue;
    }
    const int n = z.format.dim(i);
    const int span = span_rank(z, i);
    if (n == 1) {
      h.factors.push_back(mobius_on_p1(coords));
    } else if (n == 2 && span == 3) {
      h.factors.push_back(conic_through_3jet(coords));
    } else {
      // Work in the span of the Taylor vectors: coordinates there are
      // (1, t) or (1, t, t^2) plus lower corrections.
      const auto taylor = z.factor_taylor(i);
      std::vector<std::vector<Rational>> basis{taylor[0], taylor[1]};
      std::vector<QPoly> reduced;
      if (span == 3) {
        basis.push_back(taylor[2]);
        reduced = {QPoly(1), QPoly::monomial(1), QPoly::monomial(2)};
      } else {
        const auto c = solve_in_span(taylor[2], basis);
        require(c.has_value(), ErrorKind::InvalidInput, "inconsistent jet span");
        reduced = {QPoly(std::vector<Rational>{1, 0, (*c)[0]}), QPoly(std::vector<Rational>{0, 1, (*c)[1]})};
      }
      const FactorMap r = span == 3 ? conic_through_3jet(reduced) : mobius_on_p1(reduced);
      FactorMap f;
      f.degree = r.degree;
      for (int j = 0; j <= n; ++j) {
        QPoly acc;
        for (std::size_t b = 0; b < basis.size(); ++b) acc += r.coords[b] * basis[b][static_cast<std::size_t>(j)];
        f.coords.push_back(acc);
      }
      h.factors.push_back(std::move(f));
    }
  }
  return h;
}

std::size_t Linearization::span_dim() const {
  const auto r = mat_rank(lambda);
  return r == 0 ? 0 : r - 1;
}

namespace {

std::vector<std::vector<QPoly>> monomial_factor_polys(const CurveMap& h) {
  std::vector<std::vector<QPoly>> out;
  for (int i = 0; i < h.format.k(); ++i)
    out.push_back(monomial_values(h.factors[static_cast<std::size_t>(i)].coords, h.format.exponents(i)));
  return out;
}

Linearization pack(const CurveMap& h, const std::vector<QPoly>& polys) {
  Linearization lin;
  lin.a = h.embedded_degree();
  lin.lambda = Matrix<Rational>(polys.size(), static_cast<std::size_t>(lin.a) + 1);
  for (std::size_t r = 0; r < polys.size(); ++r)
    for (int j = 0; j <= polys[r].degree(); ++j)
      lin.lambda(r, static_cast<std::size_t>(j)) = polys[r].coeffs()[static_cast<std::size_t>(j)];
  return lin;
}

}  // namespace

Linearization linearize(const CurveMap& h) {
  validate(h);
  return pack(h, kernels::kronecker(monomial_factor_polys(h)));
}

Linearization linearize_serial(const CurveMap& h) {
  validate(h);
  return pack(h, kernels::kronecker_serial(monomial_factor_polys(h)));
}

std::vector<std::vector<Rational>> curve_jet_vectors(const CurveMap& h, int order) {
  const auto ord = static_cast<std::size_t>(order);
  std::vector<std::vector<Series>> coords;
  for (const auto& f : h.factors) {
    std::vector<Series> v;
    for (const auto& c : f.coords) v.emplace_back(c, ord);
    coords.push_back(std::move(v));
  }
  const auto series = embed_ring(h.format, coords);
  std::vector<std::vector<Rational>> out(ord, std::vector<Rational>(series.size()));
  for (std::size_t idx = 0; idx < series.size(); ++idx)
    for (std::size_t m = 0; m < ord; ++m) out[m][idx] = series[idx].value.coeff(m);
  return out;
}

std::optional<int> power_substitution(const CurveMap& h) {
  int g = 0;
  for (const auto& f : h.factors) {
    if (f.degree == 0) continue;
    g = std::gcd(g, f.degree);
    for (const auto& c : f.coords)
      for (int i = 0; i <= c.degree(); ++i)
        if (!is_zero(c.coeffs()[static_cast<std::size_t>(i)])) g = std::gcd(g, i);
  }
  if (g >= 2) return g;
  return std::nullopt;
}

Decomposition hyperplane_section_decompose(const PiecewiseCurve& curve, const PSTensor& p,
                                           const SectionOptions& options) {
  require(!curve.components.empty(), ErrorKind::InvalidInput, "empty piecewise curve");
  const Format& format = p.format;
  std::vector<Linearization> lins;
  for (const auto& c : curve.components) {
    require(c.format == format, ErrorKind::InvalidInput, "curve component format differs from tensor format");
    lins.push_back(linearize(c));
  }
  {
    std::vector<std::vector<Rational>> cols;
    for (const auto& lin : lins)
      for (std::size_t j = 0; j < lin.lambda.cols(); ++j) cols.push_back(lin.lambda.column(j));
    require(solve_in_span(p.coeffs, cols).has_value(), ErrorKind::NotInSpan, "p is not in the span of the curve");
  }
  const auto target = to_complex(p.coeffs);
  Rational pp = 0;
  for (const auto& c : p.coeffs) pp += c * c;
  for (int attempt = 0; attempt < options.retries; ++attempt) {
    Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(attempt)));
    // phi = r (p.p) - (r.p) p vanishes at p.
    std::vector<Rational> r(p.coeffs.size());
    Rational rp = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      r[i] = rng.rational(9, 4);
      rp += r[i] * p.coeffs[i];
    }
    std::vector<Rational> phi(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) phi[i] = r[i] * pp - rp * p.coeffs[i];
    std::vector<ApproxPoint> points;
    std::vector<HomParam> params;
    bool degenerate = false;
    for (std::size_t c = 0; c < lins.size() && !degenerate; ++c) {
      const auto& lambda = lins[c].lambda;
      std::vector<Rational> form(lambda.cols());
      for (std::size_t i = 0; i < lambda.rows(); ++i) {
        if (is_zero(phi[i])) continue;
        for (std::size_t j = 0; j < lambda.cols(); ++j)
          if (!is_zero(lambda(i, j))) form[j] += phi[i] * lambda(i, j);
      }
      QPoly fp(form);
      if (fp.zero()) {
        degenerate = true;  // component inside the hyperplane
        break;
      }
      for (const auto& u : roots(BinaryForm<Complex>{lins[c].a, to_approx(fp)})) {
        auto x = curve.components[c].eval(u);
        bool dup = false;
        for (const auto& y : points) dup = dup || projectively_equal(x, y, 1e-7L);
        if (dup) continue;
        points.push_back(std::move(x));
        params.push_back(u);
      }
    }
    if (degenerate || points.empty()) continue;
    std::vector<std::vector<Complex>> columns;
    for (const auto& x : points) columns.push_back(embed(format, x).coeffs);
    const auto sol = solve_sparse(target, columns, options.tol);
    if (!sol) continue;
    std::vector<ApproxTerm> terms;
    std::vector<HomParam> kept_params;
    for (std::size_t m = 0; m < sol->kept.size(); ++m) {
      terms.push_back({sol->coeffs[m], points[sol->kept[m]]});
      kept_params.push_back(params[sol->kept[m]]);
    }
    auto dec = make_approx(format, std::move(terms));
    dec.params = std::move(kept_params);
    return dec;
  }
  Error e(ErrorKind::RetriesExhausted, "hyperplane sections failed after " + std::to_string(options.retries) + " draws");
  e.seed = options.seed;
  throw e;
}

}  // namespace secant3
