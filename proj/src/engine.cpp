#include "secant3/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "secant3/linalg.hpp"
#include "secant3/random.hpp"
#include "secant3/sylvester.hpp"

namespace secant3 {

int bound_sigma3(const Format& format) { return 2 * format.degree_sum() - 1; }

int bound_curvilinear(const Format& format, int c, int alpha) {
  require(alpha >= 1 && c >= alpha, ErrorKind::InvalidInput, "bound_curvilinear needs c >= alpha >= 1");
  return 2 * alpha + c * (format.degree_sum() - 1);
}

namespace {

template <class... F>
struct Overloaded : F... {
  using F::operator()...;
};
template <class... F>
Overloaded(F...) -> Overloaded<F...>;

std::vector<QPoly> constant_coords(const std::vector<Rational>& v) {
  std::vector<QPoly> out;
  for (const auto& x : v) out.push_back(QPoly(std::vector<Rational>{x}));
  return out;
}

JetScheme point_jet(const Format& format, const ExactPoint& x) {
  check_point(format, x);
  std::vector<std::vector<QPoly>> coords;
  for (const auto& f : x.factors) coords.push_back(constant_coords(f));
  return make_jet(format, 1, std::move(coords));
}

bool all_zero(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return is_zero(x); });
}

// b is a multiple of a (a nonzero).
bool proportional(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (all_zero(b)) return true;
  return mat_rank(Matrix<Rational>::from_rows({a, b})) <= 1;
}

std::vector<std::vector<Rational>> coeff_rows(const std::vector<PSTensor>& v) {
  std::vector<std::vector<Rational>> out;
  for (const auto& t : v) out.push_back(t.coeffs);
  return out;
}

void check_order(const JetScheme& z, int order, const char* what) {
  require(z.order == order, ErrorKind::InvalidPresentation,
          std::string(what) + " must have order " + std::to_string(order));
}

Decomposition single_point(const Format& format, const Rational& coeff, const ExactPoint& x) {
  return make_exact(format, {ExactTerm{coeff, x}});
}

// Coefficient b with p == b * embed(x); p is known to lie on that line.
Rational point_coefficient(const PSTensor& p, const ExactPoint& x) {
  const auto e = embed(p.format, x);
  const auto b = solve_in_span(p.coeffs, {e.coeffs});
  require(b.has_value(), ErrorKind::NotInSpan, "p is not a multiple of the support point");
  return (*b)[0];
}

Decomposition concat(const Format& format, const std::vector<Decomposition>& parts) {
  const bool exact =
      std::all_of(parts.begin(), parts.end(), [](const Decomposition& d) { return d.field == Field::Exact; });
  if (exact) {
    std::vector<ExactTerm> terms;
    for (const auto& d : parts) terms.insert(terms.end(), d.exact_terms.begin(), d.exact_terms.end());
    return make_exact(format, std::move(terms));
  }
  std::vector<ApproxTerm> terms;
  std::vector<HomParam> params;
  bool have_params = true;
  for (const auto& d : parts) {
    const auto a = to_approx(d);
    terms.insert(terms.end(), a.approx_terms.begin(), a.approx_terms.end());
    have_params = have_params && a.params.size() == a.size();
    if (have_params) params.insert(params.end(), a.params.begin(), a.params.end());
  }
  auto out = make_approx(format, std::move(terms));
  if (have_params) out.params = std::move(params);
  return out;
}

SylvesterOptions sylvester_options(const EngineOptions& o, std::uint64_t stream) {
  return {derive_seed(o.seed, stream), o.retries, o.tol};
}

template <class T>
std::vector<T> combine_basis(const std::vector<std::vector<Rational>>& basis, const std::vector<T>& x) {
  std::vector<T> out(basis.front().size(), T(0));
  for (std::size_t b = 0; b < basis.size(); ++b)
    for (std::size_t j = 0; j < out.size(); ++j) {
      if constexpr (std::is_same_v<T, Rational>)
        out[j] += x[b] * basis[b][j];
      else
        out[j] += x[b] * to_complex(basis[b][j]);
    }
  return out;
}

template <class T>
ProductPoint<T> lift_point(const AutarkyReduction& r, const ProductPoint<T>& x) {
  require(static_cast<int>(x.factors.size()) == r.reduced.k(), ErrorKind::InvalidInput, "point is not in the reduced format");
  ProductPoint<T> out;
  std::size_t next = 0;
  for (int i = 0; i < r.original.k(); ++i) {
    const auto& basis = r.basis[static_cast<std::size_t>(i)];
    if (r.dropped(i)) {
      std::vector<T> v;
      for (const auto& c : basis.front()) {
        if constexpr (std::is_same_v<T, Rational>)
          v.push_back(c);
        else
          v.push_back(to_complex(c));
      }
      out.factors.push_back(std::move(v));
    } else {
      out.factors.push_back(combine_basis(basis, x.factors[next++]));
    }
  }
  return out;
}

CurveMap line_component(const Format& format, const ExactPoint& base, int factor, const std::vector<Rational>& from,
                        const std::vector<Rational>& to) {
  CurveMap h{format, {}};
  for (int m = 0; m < format.k(); ++m) {
    if (m == factor) {
      std::vector<QPoly> coords;
      for (std::size_t j = 0; j < from.size(); ++j) coords.push_back(QPoly(std::vector<Rational>{from[j], to[j]}));
      h.factors.push_back(FactorMap{1, std::move(coords)});
    } else {
      h.factors.push_back(FactorMap{0, constant_coords(base.factors[static_cast<std::size_t>(m)])});
    }
  }
  return h;
}

// Lemma c1 per factor; the normalized jet sometimes extends with lower degree.
CurveMap curve_from_jet(const JetScheme& z) {
  CurveMap h{z.format, {}};
  for (int i = 0; i < z.format.k(); ++i) {
    const auto raw = project_factor(z, i);
    auto normalized = raw;
    normalize_factor(normalized, z.order);
    auto a = extend_jet_to_map(raw, z.order);
    auto b = extend_jet_to_map(normalized, z.order);
    h.factors.push_back(b.e < a.e ? std::move(b.map) : std::move(a.map));
  }
  return h;
}

Decomposition jet3_case(const JetScheme& z, const PSTensor& p, const EngineOptions& o, std::vector<std::string>& notes) {
  const int c = minimalize_presentation(z, p);
  if (c == 1) {
    notes.push_back("p is the support point of the jet");
    return single_point(p.format, point_coefficient(p, z.support()), z.support());
  }
  if (c == 2) {
    notes.push_back("p lies in the span of the order-2 sub-jet; decomposed as a tangent point");
    return decompose_tangent(tangent_of(truncate_jet(z, 2)), p, o);
  }
  const auto red = autarky_reduce(MultiJet{{z}});
  const auto zr = red.reduce(z);
  const auto pr = red.reduce_tensor({zr}, p);
  if (!red.is_identity()) {
    std::string dims;
    for (int n : red.reduced.dims()) dims += (dims.empty() ? "" : ",") + std::to_string(n);
    notes.push_back("restricted to factor dimensions (" + dims + ")");
  }
  const auto h = curve_through_jet3(zr);
  const int delta = h.embedded_degree();
  require(delta >= 4, ErrorKind::InvalidPresentation,
          "curve through the jet has degree " + std::to_string(delta) + " <= 3, so p lies in the second secant variety");
  return red.lift(decompose_via_curve(h, pr, 3, sylvester_options(o, 0)));
}

Decomposition two_tangents_case(const TwoTangentsOnLine& pres, const PSTensor& p, const std::vector<Rational>& split,
                                const EngineOptions& o, std::vector<std::string>& notes, bool& fallback) {
  const Format& f = p.format;
  const int i = pres.shared_factor;
  const auto vv = jet_vectors(pres.v), wv = jet_vectors(pres.w);
  const auto pv = combine({vv[0], vv[1]}, {split[0], split[1]});
  const auto pw = combine({wv[0], wv[1]}, {split[2], split[3]});
  const auto tv = tangent_of(pres.v), tw = tangent_of(pres.w);
  std::vector<int> I, J;
  try {
    I = tangent_support(tv);
    J = tangent_support(tw);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotATangent) fail(ErrorKind::InvalidPresentation, "a tangent of the pair is degenerate");
    throw;
  }
  const auto fi = static_cast<std::size_t>(i);
  PiecewiseCurve curve;
  curve.components.push_back(line_component(f, tv.support, i, tv.support.factors[fi], tw.support.factors[fi]));
  for (int j : I)
    if (j != i)
      curve.components.push_back(line_component(f, tv.support, j, tv.support.factors[static_cast<std::size_t>(j)],
                                                tv.direction[static_cast<std::size_t>(j)]));
  for (int j : J)
    if (j != i)
      curve.components.push_back(line_component(f, tw.support, j, tw.support.factors[static_cast<std::size_t>(j)],
                                                tw.direction[static_cast<std::size_t>(j)]));
  const int alpha = curve.embedded_degree();
  notes.push_back("alpha = " + std::to_string(alpha));
  try {
    return hyperplane_section_decompose(curve, p, {o.seed, o.retries, o.tol});
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::RetriesExhausted) throw;
  }
  fallback = true;
  notes.push_back("hyperplane sections exhausted their retries; decomposed the two tangents separately");
  std::vector<Decomposition> parts;
  if (!is_zero(pv)) parts.push_back(decompose_tangent(tv, pv, o));
  if (!is_zero(pw)) {
    auto ow = o;
    ow.seed = derive_seed(o.seed, 1);
    parts.push_back(decompose_tangent(tw, pw, ow));
  }
  return concat(f, parts);
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

const Format& format_of(const BorderPresentation& pres) {
  return std::visit(Overloaded{[](const ThreePoints& x) -> const Format& { return x.format; },
                               [](const PointPlusTangent& x) -> const Format& { return x.jet.format; },
                               [](const Jet3& x) -> const Format& { return x.jet.format; },
                               [](const TwoTangentsOnLine& x) -> const Format& { return x.v.format; }},
                    pres);
}

const char* case_label(const BorderPresentation& pres) {
  static constexpr const char* labels[] = {"3a", "3b", "3c", "3d"};
  return labels[pres.index()];
}

void validate(const BorderPresentation& pres) {
  std::visit(
      Overloaded{
          [](const ThreePoints& x) {
            for (const auto& pt : x.x) check_point(x.format, pt);
            for (std::size_t a = 0; a < 3; ++a)
              for (std::size_t b = a + 1; b < 3; ++b)
                require(!projectively_equal(x.x[a], x.x[b]), ErrorKind::InvalidPresentation,
                        "the three points must be distinct");
          },
          [](const PointPlusTangent& x) {
            check_order(x.jet, 2, "the tangent jet");
            check_point(x.jet.format, x.a);
            require(!projectively_equal(x.a, x.jet.support()), ErrorKind::InvalidPresentation,
                    "the point coincides with the tangent support");
          },
          [](const Jet3& x) { check_order(x.jet, 3, "the jet"); },
          [](const TwoTangentsOnLine& x) {
            check_order(x.v, 2, "tangent v");
            check_order(x.w, 2, "tangent w");
            const Format& f = x.v.format;
            require(x.w.format == f, ErrorKind::InvalidPresentation, "the two tangents differ in format");
            const int i = x.shared_factor;
            require(i >= 0 && i < f.k(), ErrorKind::InvalidPresentation, "shared factor out of range");
            require(f.degree(i) == 1, ErrorKind::InvalidPresentation, "the shared factor must have degree 1");
            const auto ov = x.v.support(), ow = x.w.support();
            for (int j = 0; j < f.k(); ++j) {
              const auto fj = static_cast<std::size_t>(j);
              const bool same = proportional(ov.factors[fj], ow.factors[fj]);
              require(same == (j != i), ErrorKind::InvalidPresentation,
                      "the supports must differ exactly in the shared factor");
            }
            // Both directions must stay on the line through the supports in
            // the shared factor, so that L carries that part of each tangent.
            const auto fi = static_cast<std::size_t>(i);
            for (const auto* z : {&x.v, &x.w}) {
              const auto dir = tangent_of(*z).direction[fi];
              require(mat_rank(Matrix<Rational>::from_rows({ov.factors[fi], ow.factors[fi], dir})) == 2,
                      ErrorKind::InvalidPresentation, "a tangent direction leaves the line in the shared factor");
            }
          }},
      pres);
}

std::vector<PSTensor> presentation_vectors(const BorderPresentation& pres) {
  return std::visit(Overloaded{[](const ThreePoints& x) {
                                 std::vector<PSTensor> out;
                                 for (const auto& pt : x.x) out.push_back(embed(x.format, pt));
                                 return out;
                               },
                               [](const PointPlusTangent& x) {
                                 std::vector<PSTensor> out{embed(x.jet.format, x.a)};
                                 for (auto& v : jet_vectors(x.jet)) out.push_back(std::move(v));
                                 return out;
                               },
                               [](const Jet3& x) { return jet_vectors(x.jet); },
                               [](const TwoTangentsOnLine& x) {
                                 auto out = jet_vectors(x.v);
                                 for (auto& v : jet_vectors(x.w)) out.push_back(std::move(v));
                                 return out;
                               }},
                    pres);
}

MultiJet to_multijet(const BorderPresentation& pres) {
  return std::visit(Overloaded{[](const ThreePoints& x) {
                                 MultiJet mj;
                                 for (const auto& pt : x.x) mj.components.push_back(point_jet(x.format, pt));
                                 return mj;
                               },
                               [](const PointPlusTangent& x) {
                                 return MultiJet{{point_jet(x.jet.format, x.a), x.jet}};
                               },
                               [](const Jet3& x) { return MultiJet{{x.jet}}; },
                               [](const TwoTangentsOnLine& x) { return MultiJet{{x.v, x.w}}; }},
                    pres);
}

TangentPresentation tangent_of(const JetScheme& jet) {
  require(jet.order >= 2, ErrorKind::InvalidInput, "a tangent needs a jet of order at least 2");
  TangentPresentation t{jet.support(), {}};
  for (int i = 0; i < jet.format.k(); ++i) t.direction.push_back(jet.factor_taylor(i)[1]);
  return t;
}

JetScheme tangent_jet(const Format& format, const TangentPresentation& t) {
  check_point(format, t.support);
  require(static_cast<int>(t.direction.size()) == format.k(), ErrorKind::InvalidInput, "direction has wrong factor count");
  std::vector<std::vector<QPoly>> coords;
  for (int i = 0; i < format.k(); ++i) {
    const auto& o = t.support.factors[static_cast<std::size_t>(i)];
    const auto& w = t.direction[static_cast<std::size_t>(i)];
    require(w.size() == o.size(), ErrorKind::InvalidInput, "direction factor has wrong length");
    coords.emplace_back();
    for (std::size_t j = 0; j < o.size(); ++j) coords.back().push_back(QPoly(std::vector<Rational>{o[j], w[j]}));
  }
  return make_jet(format, 2, std::move(coords));
}

std::vector<int> tangent_support(const TangentPresentation& t) {
  require(t.direction.size() == t.support.factors.size(), ErrorKind::InvalidInput, "direction has wrong factor count");
  std::vector<int> e;
  for (std::size_t i = 0; i < t.direction.size(); ++i) {
    require(t.direction[i].size() == t.support.factors[i].size(), ErrorKind::InvalidInput,
            "direction factor has wrong length");
    if (!proportional(t.support.factors[i], t.direction[i])) e.push_back(static_cast<int>(i));
  }
  require(!e.empty(), ErrorKind::NotATangent, "direction is a multiple of the support in every factor");
  return e;
}

bool AutarkyReduction::is_identity() const {
  for (int i = 0; i < original.k(); ++i)
    if (static_cast<int>(basis[static_cast<std::size_t>(i)].size()) != original.dim(i) + 1) return false;
  return true;
}

JetScheme AutarkyReduction::reduce(const JetScheme& z) const {
  require(z.format == original, ErrorKind::InvalidInput, "jet is not in the original format");
  std::vector<std::vector<QPoly>> coords;
  for (int i : kept) {
    const auto& basis = this->basis[static_cast<std::size_t>(i)];
    std::vector<std::vector<Rational>> c(basis.size());
    for (const auto& row : z.factor_taylor(i)) {
      const auto x = solve_in_span(row, basis);
      require(x.has_value(), ErrorKind::InvalidInput, "jet leaves the span of the reduction");
      for (std::size_t b = 0; b < basis.size(); ++b) c[b].push_back((*x)[b]);
    }
    coords.emplace_back();
    for (auto& v : c) coords.back().push_back(QPoly(std::move(v)));
  }
  return make_jet(reduced, z.order, std::move(coords));
}

JetScheme AutarkyReduction::lift(const JetScheme& z) const {
  require(z.format == reduced, ErrorKind::InvalidInput, "jet is not in the reduced format");
  std::vector<std::vector<QPoly>> coords;
  std::size_t next = 0;
  for (int i = 0; i < original.k(); ++i) {
    const auto& basis = this->basis[static_cast<std::size_t>(i)];
    if (dropped(i)) {
      coords.push_back(constant_coords(basis.front()));
      continue;
    }
    const auto& g = z.factors[next++];
    std::vector<QPoly> f(basis.front().size());
    for (std::size_t b = 0; b < basis.size(); ++b)
      for (std::size_t j = 0; j < f.size(); ++j) f[j] += g[b] * basis[b][j];
    coords.push_back(std::move(f));
  }
  return make_jet(original, z.order, std::move(coords));
}

ExactPoint AutarkyReduction::reduce(const ExactPoint& x) const {
  const auto z = reduce(point_jet(original, x));
  return z.support();
}

ExactPoint AutarkyReduction::lift(const ExactPoint& x) const { return lift_point(*this, x); }
ApproxPoint AutarkyReduction::lift(const ApproxPoint& x) const { return lift_point(*this, x); }

Decomposition AutarkyReduction::lift(const Decomposition& dec) const {
  require(dec.format == reduced, ErrorKind::InvalidInput, "decomposition is not in the reduced format");
  Decomposition out{original, dec.field, {}, {}, dec.params};
  for (const auto& t : dec.exact_terms) out.exact_terms.push_back({t.coeff, lift(t.point)});
  for (const auto& t : dec.approx_terms) out.approx_terms.push_back({t.coeff, lift(t.point)});
  return out;
}

PSTensor AutarkyReduction::reduce_tensor(const std::vector<JetScheme>& reduced_components, const PSTensor& p) const {
  require(p.format == original, ErrorKind::InvalidInput, "tensor is not in the original format");
  std::vector<std::vector<Rational>> lifted;
  std::vector<PSTensor> local;
  for (const auto& z : reduced_components) {
    for (const auto& v : jet_vectors(lift(z))) lifted.push_back(v.coeffs);
    for (auto& v : jet_vectors(z)) local.push_back(std::move(v));
  }
  const auto c = solve_in_span(p.coeffs, lifted);
  require(c.has_value(), ErrorKind::NotInSpan, "p is not in the span of the scheme");
  return combine(local, *c);
}

AutarkyReduction autarky_reduce(const MultiJet& mj) {
  validate(mj);
  const Format& f = mj.format();
  AutarkyReduction r{f, f, {}, {}};
  std::vector<int> dims, degrees;
  for (int i = 0; i < f.k(); ++i) {
    std::vector<std::vector<Rational>> basis;
    for (const auto& z : mj.components)
      for (const auto& row : z.factor_taylor(i)) {
        if (all_zero(row)) continue;
        if (basis.empty() || !solve_in_span(row, basis)) basis.push_back(row);
      }
    if (static_cast<int>(basis.size()) == f.dim(i) + 1) {
      for (int j = 0; j <= f.dim(i); ++j) {
        basis[static_cast<std::size_t>(j)].assign(basis.front().size(), 0);
        basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = 1;
      }
    }
    if (basis.size() >= 2) {
      r.kept.push_back(i);
      dims.push_back(static_cast<int>(basis.size()) - 1);
      degrees.push_back(f.degree(i));
    }
    r.basis.push_back(std::move(basis));
  }
  require(!r.kept.empty(), ErrorKind::InvalidInput, "the scheme projects to a single point in every factor");
  r.reduced = Format(dims, degrees);
  return r;
}

AutarkyReduction autarky_reduce(const BorderPresentation& pres) { return autarky_reduce(to_multijet(pres)); }

BorderPresentation reduce_presentation(const AutarkyReduction& r, const BorderPresentation& pres) {
  return std::visit(
      Overloaded{[&](const ThreePoints& x) -> BorderPresentation {
                   return ThreePoints{r.reduced, {r.reduce(x.x[0]), r.reduce(x.x[1]), r.reduce(x.x[2])}};
                 },
                 [&](const PointPlusTangent& x) -> BorderPresentation {
                   return PointPlusTangent{r.reduce(x.a), r.reduce(x.jet)};
                 },
                 [&](const Jet3& x) -> BorderPresentation { return Jet3{r.reduce(x.jet)}; },
                 [&](const TwoTangentsOnLine& x) -> BorderPresentation {
                   const auto it = std::find(r.kept.begin(), r.kept.end(), x.shared_factor);
                   require(it != r.kept.end(), ErrorKind::InvalidPresentation, "shared factor was dropped");
                   return TwoTangentsOnLine{r.reduce(x.v), r.reduce(x.w), static_cast<int>(it - r.kept.begin())};
                 }},
      pres);
}

int minimalize_presentation(const JetScheme& jet, const PSTensor& p) {
  require(p.format == jet.format, ErrorKind::InvalidInput, "tensor and jet formats differ");
  const auto v = jet_vector_coeffs(jet);
  require(solve_in_span(p.coeffs, v).has_value(), ErrorKind::NotInSpan, "p is not in the span of the jet");
  for (int c = 1; c < jet.order; ++c)
    if (solve_in_span(p.coeffs, std::vector<std::vector<Rational>>(v.begin(), v.begin() + c))) return c;
  return jet.order;
}

std::string digest(const PSTensor& p) {
  std::string text;
  for (int i = 0; i < p.format.k(); ++i)
    text += std::to_string(p.format.dim(i)) + ":" + std::to_string(p.format.degree(i)) + ";";
  for (const auto& c : p.coeffs) text += to_string(c) + ",";
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Certificate certify(const PSTensor& p, const Decomposition& dec, int bound, const EngineOptions& options) {
  Certificate c;
  c.digest = digest(p);
  c.bound = bound;
  c.size = dec.size();
  c.seed = options.seed;
  const auto v = verify_decomposition(p, dec, options.mode, options.tol);
  c.mode = v.mode;
  c.residual = v.residual;
  if (!v.note.empty()) c.notes.push_back(v.note);
  require(static_cast<long>(c.size) <= bound, ErrorKind::VerificationFailed,
          "size " + std::to_string(c.size) + " exceeds the bound " + std::to_string(bound));
  const auto report = flattening_report(p, options.flattening);
  c.flattening_max_rank = report.max_rank;
  c.flattening_partial = report.partial;
  require(report.max_rank <= c.size, ErrorKind::VerificationFailed, "a flattening rank exceeds the decomposition size");
  return c;
}

Decomposition decompose_tangent(const TangentPresentation& t, const PSTensor& p, const EngineOptions& options) {
  const Format& f = p.format;
  const auto e = tangent_support(t);
  require(!is_zero(p), ErrorKind::InvalidInput, "p is zero");
  const auto jet = tangent_jet(f, t);
  if (minimalize_presentation(jet, p) == 1) return single_point(f, point_coefficient(p, t.support), t.support);
  CurveMap h{f, {}};
  for (int i = 0; i < f.k(); ++i) {
    const auto& o = t.support.factors[static_cast<std::size_t>(i)];
    if (std::find(e.begin(), e.end(), i) == e.end()) {
      h.factors.push_back(FactorMap{0, constant_coords(o)});
      continue;
    }
    const auto& w = t.direction[static_cast<std::size_t>(i)];
    std::vector<QPoly> coords;
    for (std::size_t j = 0; j < o.size(); ++j) coords.push_back(QPoly(std::vector<Rational>{o[j], w[j]}));
    h.factors.push_back(FactorMap{1, std::move(coords)});
  }
  return decompose_via_curve(h, p, 2, sylvester_options(options, 0));
}

EngineResult decompose_sigma3(const BorderPresentation& pres, const PSTensor& p, const EngineOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  validate(pres);
  const Format& f = format_of(pres);
  require(p.format == f, ErrorKind::InvalidInput, "tensor and presentation formats differ");
  require(!is_zero(p), ErrorKind::InvalidInput, "p is zero");
  const auto vectors = presentation_vectors(pres);
  const auto split = solve_in_span(p.coeffs, coeff_rows(vectors));
  require(split.has_value(), ErrorKind::NotInSpan, "p is not in the span of the presentation");

  std::vector<std::string> notes;
  bool fallback = false;
  if (f.k() == 1 && f.degree(0) == 1) {
    // X is all of P^n: p is its own rank-1 decomposition.
    auto dec = single_point(f, 1, ExactPoint{{p.coeffs}});
    auto cert = certify(p, dec, bound_sigma3(f), options);
    cert.case_label = case_label(pres);
    cert.notes.insert(cert.notes.begin(), "linear format: every point lies on X");
    if (options.timings) cert.elapsed_ms = elapsed_since(start);
    return {std::move(dec), std::move(cert)};
  }
  auto dec = std::visit(
      Overloaded{[&](const ThreePoints& x) {
                   std::vector<ExactTerm> terms;
                   for (std::size_t j = 0; j < 3; ++j)
                     if (!is_zero((*split)[j])) terms.push_back({(*split)[j], x.x[j]});
                   if (terms.size() < 3) notes.push_back("p lies in the span of fewer than three of the points");
                   return make_exact(f, std::move(terms));
                 },
                 [&](const PointPlusTangent& x) {
                   std::vector<Decomposition> parts;
                   if (!is_zero((*split)[0])) parts.push_back(single_point(f, (*split)[0], x.a));
                   const auto v = jet_vectors(x.jet);
                   const auto q = combine(v, {(*split)[1], (*split)[2]});
                   if (!is_zero(q)) parts.push_back(decompose_tangent(tangent_of(x.jet), q, options));
                   return concat(f, parts);
                 },
                 [&](const Jet3& x) { return jet3_case(x.jet, p, options, notes); },
                 [&](const TwoTangentsOnLine& x) { return two_tangents_case(x, p, *split, options, notes, fallback); }},
      pres);
  merge_duplicates(dec);

  auto cert = certify(p, dec, bound_sigma3(f), options);
  cert.case_label = case_label(pres);
  cert.fallback = fallback;
  cert.notes.insert(cert.notes.begin(), notes.begin(), notes.end());
  if (options.timings) cert.elapsed_ms = elapsed_since(start);
  return {std::move(dec), std::move(cert)};
}

EngineResult decompose_curvilinear(const MultiJet& mj, const PSTensor& p, const EngineOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  validate(mj);
  const Format& f = mj.format();
  require(p.format == f, ErrorKind::InvalidInput, "tensor and multijet formats differ");
  require(!is_zero(p), ErrorKind::InvalidInput, "p is zero");
  std::vector<std::vector<Rational>> gens;
  for (std::size_t j = 0; j < mj.components.size(); ++j) {
    const auto v = jet_vector_coeffs(mj.components[j]);
    require(mat_rank(Matrix<Rational>::from_rows(v)) == v.size(), ErrorKind::IndependenceFailure,
            "jet vectors of component " + std::to_string(j + 1) + " are dependent");
    gens.insert(gens.end(), v.begin(), v.end());
  }
  const auto split = solve_in_span(p.coeffs, gens);
  require(split.has_value(), ErrorKind::NotInSpan, "p is not in the span of the multijet");

  std::vector<std::string> notes;
  std::vector<Decomposition> parts;
  std::size_t offset = 0;
  for (std::size_t j = 0; j < mj.components.size(); ++j) {
    const auto& z = mj.components[j];
    const std::vector<Rational> b(split->begin() + static_cast<std::ptrdiff_t>(offset),
                                  split->begin() + static_cast<std::ptrdiff_t>(offset) + z.order);
    offset += static_cast<std::size_t>(z.order);
    int c = 0;
    for (int m = 0; m < z.order; ++m)
      if (!is_zero(b[static_cast<std::size_t>(m)])) c = m + 1;
    if (c == 0) continue;
    if (c < z.order)
      notes.push_back("component " + std::to_string(j + 1) + " reduced to order " + std::to_string(c));
    if (c == 1) {
      parts.push_back(single_point(f, b[0], z.support()));
      continue;
    }
    const auto sub = truncate_jet(z, c);
    const auto pj = combine(jet_vectors(sub), std::vector<Rational>(b.begin(), b.begin() + c));
    parts.push_back(decompose_via_curve(curve_from_jet(sub), pj, c, sylvester_options(options, j)));
  }
  auto dec = concat(f, parts);
  merge_duplicates(dec);

  const int alpha = static_cast<int>(mj.components.size());
  auto cert = certify(p, dec, bound_curvilinear(f, mj.total_degree(), alpha), options);
  cert.case_label = "curvilinear";
  cert.notes.insert(cert.notes.begin(), notes.begin(), notes.end());
  if (options.timings) cert.elapsed_ms = elapsed_since(start);
  return {std::move(dec), std::move(cert)};
}

}  // namespace secant3
