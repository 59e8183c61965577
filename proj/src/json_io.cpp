#include "secant3/json_io.hpp"

#include <algorithm>

namespace secant3 {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& message) {
  fail(ErrorKind::InvalidInput, "input:" + (path.empty() ? std::string("/") : path) + ": " + message);
}

std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }
std::string at(const std::string& path, const char* key) { return path + "/" + key; }

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  return j;
}

int integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<int>();
}

std::vector<int> integers(const Json& j, const std::string& path) {
  std::vector<int> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(integer(j[i], at(path, i)));
  return out;
}

Real decode_real(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_string()) bad(path, "expected a number or numeric string");
  try {
    return parse_real(j.get<std::string>());
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

Complex decode_complex(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) bad(path, "expected [re, im]");
  return {decode_real(j[0], at(path, std::size_t{0})), decode_real(j[1], at(path, std::size_t{1}))};
}

std::vector<QPoly> decode_polys(const Json& j, const std::string& path) {
  std::vector<QPoly> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(QPoly(decode_rationals(j[i], at(path, i))));
  return out;
}

HomParam decode_param(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) bad(path, "expected [s, t]");
  return {decode_complex(j[0], at(path, std::size_t{0})), decode_complex(j[1], at(path, std::size_t{1}))};
}

Json encode_poly(const QPoly& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(encode(c));
  return out;
}

Json encode_rationals(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(encode(x));
  return out;
}

Json encode_param(const HomParam& u) { return Json::array({encode(u.s), encode(u.t)}); }

}  // namespace

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorKind::InvalidInput, source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) bad(path, std::string("missing key \"") + key + "\"");
  return *it;
}

Rational decode_rational(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) bad(path, "expected a rational string such as \"3/4\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

std::vector<Rational> decode_rationals(const Json& j, const std::string& path) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(decode_rational(j[i], at(path, i)));
  return out;
}

Format decode_format(const Json& j, const std::string& path) {
  const int k = integer(member(j, "k", path), at(path, "k"));
  auto n = integers(member(j, "n", path), at(path, "n"));
  auto d = integers(member(j, "d", path), at(path, "d"));
  if (static_cast<int>(n.size()) != k || static_cast<int>(d.size()) != k) bad(path, "n and d must have k entries");
  try {
    return Format(std::move(n), std::move(d));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InvalidInput) throw;
    bad(path, e.what());
  }
}

PSTensor decode_tensor(const Json& j, const std::string& path) {
  const auto f = decode_format(member(j, "format", path), at(path, "format"));
  auto c = decode_rationals(member(j, "coeffs", path), at(path, "coeffs"));
  if (c.size() != f.size()) bad(at(path, "coeffs"), "expected " + std::to_string(f.size()) + " coefficients");
  return {f, std::move(c)};
}

ExactPoint decode_point(const Json& j, const Format& format, const std::string& path) {
  ExactPoint x;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) x.factors.push_back(decode_rationals(j[i], at(path, i)));
  try {
    check_point(format, x);
  } catch (const Error& e) {
    bad(path, e.what());
  }
  return x;
}

JetScheme decode_jet(const Json& j, const std::string& path) {
  auto f = decode_format(member(j, "format", path), at(path, "format"));
  const int order = integer(member(j, "order", path), at(path, "order"));
  const auto& fj = array(member(j, "factors", path), at(path, "factors"));
  std::vector<std::vector<QPoly>> factors;
  for (std::size_t i = 0; i < fj.size(); ++i) factors.push_back(decode_polys(fj[i], at(at(path, "factors"), i)));
  try {
    if (j.contains("base"))
      return make_jet_at(std::move(f), order, std::move(factors), decode_rational(j["base"], at(path, "base")));
    return make_jet(std::move(f), order, std::move(factors));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InvalidInput) throw;
    bad(path, e.what());
  }
}

MultiJet decode_multijet(const Json& j, const std::string& path) {
  const auto& c = array(member(j, "components", path), at(path, "components"));
  MultiJet mj;
  for (std::size_t i = 0; i < c.size(); ++i) mj.components.push_back(decode_jet(c[i], at(at(path, "components"), i)));
  if (mj.components.empty()) bad(path, "multijet needs at least one component");
  return mj;
}

BorderPresentation decode_presentation(const Json& j, const std::string& path) {
  const auto& tj = member(j, "type", path);
  if (!tj.is_string()) bad(at(path, "type"), "expected a string");
  const auto type = tj.get<std::string>();
  if (type == "ThreePoints") {
    const auto f = decode_format(member(j, "format", path), at(path, "format"));
    const auto& pts = array(member(j, "points", path), at(path, "points"));
    if (pts.size() != 3) bad(at(path, "points"), "expected three points");
    ThreePoints out{f, {}};
    for (std::size_t i = 0; i < 3; ++i) out.x[i] = decode_point(pts[i], f, at(at(path, "points"), i));
    return out;
  }
  if (type == "PointPlusTangent") {
    auto jet = decode_jet(member(j, "jet", path), at(path, "jet"));
    auto a = decode_point(member(j, "point", path), jet.format, at(path, "point"));
    return PointPlusTangent{std::move(a), std::move(jet)};
  }
  if (type == "Jet3") return Jet3{decode_jet(member(j, "jet", path), at(path, "jet"))};
  if (type == "TwoTangentsOnLine") {
    auto v = decode_jet(member(j, "v", path), at(path, "v"));
    auto w = decode_jet(member(j, "w", path), at(path, "w"));
    const int i = integer(member(j, "sharedFactor", path), at(path, "sharedFactor"));
    return TwoTangentsOnLine{std::move(v), std::move(w), i - 1};
  }
  bad(at(path, "type"), "unknown presentation type \"" + type + "\"");
}

TangentPresentation decode_tangent(const Json& j, const Format& format, const std::string& path) {
  TangentPresentation t{decode_point(member(j, "support", path), format, at(path, "support")), {}};
  const auto& d = array(member(j, "direction", path), at(path, "direction"));
  for (std::size_t i = 0; i < d.size(); ++i)
    t.direction.push_back(decode_rationals(d[i], at(at(path, "direction"), i)));
  if (static_cast<int>(t.direction.size()) != format.k()) bad(at(path, "direction"), "expected one vector per factor");
  return t;
}

Decomposition decode_decomposition(const Json& j, const std::string& path) {
  const auto f = decode_format(member(j, "format", path), at(path, "format"));
  const auto& field = member(j, "field", path);
  const auto& terms = array(member(j, "terms", path), at(path, "terms"));
  const bool exact = field == "exact";
  if (!exact && field != "approx") bad(at(path, "field"), "expected \"exact\" or \"approx\"");
  std::vector<ExactTerm> et;
  std::vector<ApproxTerm> at_;
  std::vector<HomParam> params;
  for (std::size_t m = 0; m < terms.size(); ++m) {
    const auto tp = at(at(path, "terms"), m);
    const auto& cj = member(terms[m], "coeff", tp);
    const auto& pj = array(member(terms[m], "point", tp), at(tp, "point"));
    if (exact) {
      et.push_back({decode_rational(cj, at(tp, "coeff")), decode_point(pj, f, at(tp, "point"))});
    } else {
      ApproxPoint x;
      for (std::size_t i = 0; i < pj.size(); ++i) {
        const auto fp = at(at(tp, "point"), i);
        x.factors.emplace_back();
        for (std::size_t c = 0; c < array(pj[i], fp).size(); ++c) x.factors.back().push_back(decode_complex(pj[i][c], at(fp, c)));
      }
      at_.push_back({decode_complex(cj, at(tp, "coeff")), std::move(x)});
    }
    if (terms[m].contains("param")) params.push_back(decode_param(terms[m]["param"], at(tp, "param")));
  }
  try {
    auto dec = exact ? make_exact(f, std::move(et)) : make_approx(f, std::move(at_));
    if (params.size() == dec.size()) dec.params = std::move(params);
    return dec;
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

Json encode(const Rational& x) { return to_string(x); }

Json encode(const Complex& x) { return Json::array({to_string(x.real()), to_string(x.imag())}); }

Json encode(const Format& f) { return Json{{"k", f.k()}, {"n", f.dims()}, {"d", f.degrees()}}; }

Json encode(const PSTensor& p) {
  return Json{{"format", encode(p.format)}, {"coeffs", encode_rationals(p.coeffs)}};
}

Json encode(const ExactPoint& x) {
  Json out = Json::array();
  for (const auto& f : x.factors) out.push_back(encode_rationals(f));
  return out;
}

Json encode(const ApproxPoint& x) {
  Json out = Json::array();
  for (const auto& f : x.factors) {
    Json v = Json::array();
    for (const auto& c : f) v.push_back(encode(c));
    out.push_back(std::move(v));
  }
  return out;
}

Json encode(const JetScheme& z) {
  Json factors = Json::array();
  for (const auto& f : z.factors) {
    Json coords = Json::array();
    for (const auto& c : f) coords.push_back(encode_poly(c));
    factors.push_back(std::move(coords));
  }
  return Json{{"format", encode(z.format)}, {"order", z.order}, {"factors", std::move(factors)}};
}

Json encode(const MultiJet& mj) {
  Json c = Json::array();
  for (const auto& z : mj.components) c.push_back(encode(z));
  return Json{{"components", std::move(c)}};
}

Json encode(const BorderPresentation& pres) {
  if (const auto* x = std::get_if<ThreePoints>(&pres))
    return Json{{"type", "ThreePoints"},
                {"format", encode(x->format)},
                {"points", Json::array({encode(x->x[0]), encode(x->x[1]), encode(x->x[2])})}};
  if (const auto* x = std::get_if<PointPlusTangent>(&pres))
    return Json{{"type", "PointPlusTangent"}, {"point", encode(x->a)}, {"jet", encode(x->jet)}};
  if (const auto* x = std::get_if<Jet3>(&pres)) return Json{{"type", "Jet3"}, {"jet", encode(x->jet)}};
  const auto& x = std::get<TwoTangentsOnLine>(pres);
  return Json{{"type", "TwoTangentsOnLine"}, {"v", encode(x.v)}, {"w", encode(x.w)}, {"sharedFactor", x.shared_factor + 1}};
}

Json encode(const Decomposition& dec) {
  Json terms = Json::array();
  const bool with_params = dec.params.size() == dec.size();
  for (std::size_t m = 0; m < dec.size(); ++m) {
    Json t = dec.field == Field::Exact
                 ? Json{{"coeff", encode(dec.exact_terms[m].coeff)}, {"point", encode(dec.exact_terms[m].point)}}
                 : Json{{"coeff", encode(dec.approx_terms[m].coeff)}, {"point", encode(dec.approx_terms[m].point)}};
    if (with_params) t["param"] = encode_param(dec.params[m]);
    terms.push_back(std::move(t));
  }
  return Json{{"format", encode(dec.format)},
              {"field", dec.field == Field::Exact ? "exact" : "approx"},
              {"size", dec.size()},
              {"terms", std::move(terms)}};
}

Json encode(const Certificate& c) {
  Json out{{"digest", c.digest},
           {"bound", c.bound},
           {"size", c.size},
           {"mode", to_string(c.mode)},
           {"residual", to_string(c.residual)},
           {"flatteningMaxRank", c.flattening_max_rank},
           {"flatteningPartial", c.flattening_partial},
           {"seed", c.seed},
           {"status", c.status},
           {"fallback", c.fallback},
           {"case", c.case_label},
           {"notes", c.notes}};
  if (c.slope) out["slope"] = to_string(*c.slope);
  if (c.elapsed_ms) out["elapsedMs"] = *c.elapsed_ms;
  return out;
}

Json encode(const RncDecomposition& r) {
  Json params = Json::array(), coeffs = Json::array();
  for (const auto& u : r.params) params.push_back(encode_param(u));
  for (const auto& c : r.coeffs) coeffs.push_back(encode(c));
  return Json{{"a", r.a}, {"size", r.size()}, {"params", std::move(params)}, {"coeffs", std::move(coeffs)},
              {"residual", to_string(r.residual)}};
}

Json encode(const FlatteningReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back(Json{{"split", e.split}, {"rows", e.rows}, {"cols", e.cols}, {"rank", e.rank}});
  return Json{{"maxRank", r.max_rank}, {"partial", r.partial}, {"entries", std::move(entries)}};
}

Json encode(const WitnessBundle& w) {
  Json padded = Json::array();
  for (const auto& o : w.padded_factors) padded.push_back(encode_rationals(o));
  return Json{{"schema", kSchema},
              {"k", w.k},
              {"x", w.x},
              {"format", encode(w.format)},
              {"p", encode(w.p)},
              {"presentation", encode(BorderPresentation{w.presentation})},
              {"spanCoeffs", encode_rationals(w.span_coeffs)},
              {"decomposition", encode(w.decomposition)},
              {"certificate", encode(w.certificate)},
              {"paddedFactors", std::move(padded)}};
}

Json encode(const BorderFamily& f) {
  return Json{{"epsilon", encode(f.epsilon)}, {"residual", to_string(f.residual)}, {"decomposition", encode(f.decomposition)}};
}

}  // namespace secant3
