#include "secant3/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "secant3/json_io.hpp"
#include "secant3/random.hpp"

namespace secant3::cli {

namespace {

struct Request {
  std::string command;
  std::string in;
  std::optional<Json> inline_doc;  // batch entries carry their input directly
  std::string format, p, dec;
  std::optional<int> c, alpha, k, x;
  std::vector<std::string> eps;
  std::uint64_t seed = 0;
  std::string tol;
  std::optional<VerifyMode> mode;
  bool timings = false;
  int workers = 0;
  std::string rank_tol;
};

struct Response {
  int code = kExitOk;
  Json doc;
  std::vector<std::string> summary;
};

std::string fmt(const char* spec, long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

bool looks_inline(const std::string& s) {
  const auto pos = s.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && (s[pos] == '{' || s[pos] == '[');
}

Json load(const std::string& arg, const char* flag) {
  require(!arg.empty(), ErrorKind::InvalidInput, std::string("missing ") + flag);
  Json j;
  if (looks_inline(arg)) {
    j = parse_json_text(arg, "<inline>");
  } else {
    std::ifstream in(arg);
    require(static_cast<bool>(in), ErrorKind::InvalidInput, "cannot read " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    j = parse_json_text(ss.str(), arg);
  }
  if (j.is_object() && j.contains("schema"))
    require(j["schema"] == kSchema, ErrorKind::InvalidInput,
            "input:/schema: unsupported schema " + j["schema"].dump() + ", expected \"" + kSchema + "\"");
  return j;
}

Json load_input(const Request& req) { return req.inline_doc ? *req.inline_doc : load(req.in, "--in"); }

int integer_at(const Json& j, const std::string& path) {
  require(j.is_number_integer(), ErrorKind::InvalidInput, "input:" + path + ": expected an integer");
  return j.get<int>();
}

EngineOptions engine_options(const Request& req) {
  EngineOptions o;
  o.seed = req.seed;
  if (!req.tol.empty()) {
    try {
      o.tol = parse_real(req.tol);
    } catch (const Error&) {
      fail(ErrorKind::InvalidInput, "--tol: not a number: " + req.tol);
    }
    require(o.tol > 0, ErrorKind::InvalidInput, "--tol must be positive");
  }
  if (req.mode) o.mode = *req.mode;
  o.timings = req.timings;
  return o;
}

// p given directly, or as coefficients on the presentation's spanning vectors.
PSTensor target(const Json& in, const std::vector<PSTensor>& vectors, const Format& f) {
  if (in.contains("p")) {
    auto p = decode_tensor(in["p"], "/p");
    require(p.format == f, ErrorKind::InvalidInput, "input:/p: format differs from the presentation");
    return p;
  }
  require(in.contains("spanCoeffs"), ErrorKind::InvalidInput, "input:/: need \"p\" or \"spanCoeffs\"");
  const auto c = decode_rationals(in["spanCoeffs"], "/spanCoeffs");
  require(c.size() == vectors.size(), ErrorKind::InvalidInput,
          "input:/spanCoeffs: expected " + std::to_string(vectors.size()) + " coefficients");
  return combine(vectors, c);
}

std::vector<std::string> certificate_summary(const Certificate& c) {
  std::vector<std::string> out;
  out.push_back((c.case_label.empty() ? std::string() : "case " + c.case_label + ": ") + "size " +
                std::to_string(c.size) + " <= bound " + std::to_string(c.bound));
  out.push_back(std::string("verified (") + to_string(c.mode) + "), residual " + fmt("%.3Le", c.residual));
  out.push_back("flattening max rank " + std::to_string(c.flattening_max_rank) +
                (c.flattening_partial ? " (factor splits only)" : ""));
  if (c.fallback) out.emplace_back("fallback: tangents decomposed separately");
  if (c.slope) out.push_back("border family slope " + fmt("%.3Lf", *c.slope));
  for (const auto& n : c.notes) out.push_back("note: " + n);
  out.push_back("digest " + c.digest + ", seed " + std::to_string(c.seed));
  return out;
}

Response result_response(const PSTensor& p, const Decomposition& dec, const Certificate& cert) {
  Response r;
  r.doc = Json{{"schema", kSchema}, {"p", encode(p)}, {"decomposition", encode(dec)}, {"certificate", encode(cert)}};
  r.summary = certificate_summary(cert);
  return r;
}

Response cmd_bound(const Request& req) {
  const Format f = req.format.empty() ? decode_format(member(load_input(req), "format", ""), "/format")
                                      : decode_format(load(req.format, "--format"), "");
  Response r;
  const int b = bound_sigma3(f);
  r.doc = Json{{"schema", kSchema}, {"format", encode(f)}, {"boundSigma3", b}};
  r.summary = {std::to_string(b)};
  if (req.c) {
    const int cb = bound_curvilinear(f, *req.c, req.alpha.value_or(1));
    r.doc["boundCurvilinear"] = cb;
    r.summary = {std::to_string(cb)};
  }
  return r;
}

Response cmd_embed(const Request& req) {
  const Json in = load_input(req);
  const Format f = decode_format(member(in, "format", ""), "/format");
  const auto p = embed(f, decode_point(member(in, "point", ""), f, "/point"));
  Response r;
  r.doc = Json{{"schema", kSchema}, {"format", encode(p.format)}, {"coeffs", encode(p)["coeffs"]}};
  r.summary = {"embedded tensor with " + std::to_string(p.coeffs.size()) + " coefficients"};
  return r;
}

Response cmd_decompose(const Request& req) {
  const Json in = load_input(req);
  const auto options = engine_options(req);
  if (in.contains("tangent")) {
    const Format f = decode_format(member(in["tangent"], "format", "/tangent"), "/tangent/format");
    const auto t = decode_tangent(in["tangent"], f, "/tangent");
    const auto p = target(in, jet_vectors(tangent_jet(f, t)), f);
    const auto dec = decompose_tangent(t, p, options);
    auto cert = certify(p, dec, bound_sigma3(f), options);
    cert.case_label = "tangent";
    return result_response(p, dec, cert);
  }
  const auto pres = decode_presentation(member(in, "presentation", ""), "/presentation");
  const auto p = target(in, presentation_vectors(pres), format_of(pres));
  const auto res = decompose_sigma3(pres, p, options);
  return result_response(p, res.decomposition, res.certificate);
}

Response cmd_curvilinear(const Request& req) {
  const Json in = load_input(req);
  const auto mj = decode_multijet(member(in, "multijet", ""), "/multijet");
  std::vector<PSTensor> vectors;
  for (const auto& z : mj.components)
    for (auto& v : jet_vectors(z)) vectors.push_back(std::move(v));
  const auto p = target(in, vectors, mj.components.front().format);
  const auto res = decompose_curvilinear(mj, p, engine_options(req));
  return result_response(p, res.decomposition, res.certificate);
}

Response cmd_witness(const Request& req) {
  require(req.k && req.x, ErrorKind::InvalidInput, "witness needs --k and --x");
  const auto w = make_witness(*req.k, *req.x, req.seed, engine_options(req));
  Response r;
  r.doc = encode(w);
  r.summary = {"witness on (P^1)^" + std::to_string(w.k) + " with rank " + std::to_string(w.x)};
  for (auto& s : certificate_summary(w.certificate)) r.summary.push_back(std::move(s));
  return r;
}

Response cmd_sylvester(const Request& req) {
  const Json in = load_input(req);
  const auto options = engine_options(req);
  const SylvesterOptions so{options.seed, options.retries, options.tol};
  Response r;
  RncDecomposition rnc;
  if (in.contains("q")) {
    const auto q = decode_rationals(in["q"], "/q");
    rnc = sylvester_general(q, so);
  } else {
    const int a = integer_at(member(in, "a", ""), "/a");
    const int c = integer_at(member(in, "c", ""), "/c");
    rnc = sylvester_from_jet(a, c, decode_rationals(member(in, "b", ""), "/b"), so);
  }
  r.doc = Json{{"schema", kSchema}, {"rnc", encode(rnc)}};
  r.summary = {"degree " + std::to_string(rnc.a) + " rational normal curve: size " + std::to_string(rnc.size()) +
               ", residual " + fmt("%.3Le", rnc.residual)};
  return r;
}

Response cmd_verify(const Request& req) {
  Json pj, dj, cert;
  if (!req.p.empty() || !req.dec.empty()) {
    pj = load(req.p, "--p");
    dj = load(req.dec, "--dec");
    if (pj.is_object() && pj.contains("p")) pj = Json(pj["p"]);
    if (dj.is_object() && dj.contains("certificate")) cert = dj["certificate"];
    if (dj.is_object() && dj.contains("decomposition")) dj = Json(dj["decomposition"]);
  } else {
    const Json in = load_input(req);
    pj = member(in, "p", "");
    dj = member(in, "decomposition", "");
    if (in.contains("certificate")) cert = in["certificate"];
  }
  const auto p = decode_tensor(pj, "/p");
  const auto dec = decode_decomposition(dj, "/decomposition");
  require(dec.format == p.format, ErrorKind::InvalidInput, "decomposition and tensor formats differ");
  auto options = engine_options(req);
  const auto mode = req.mode.value_or(dec.field == Field::Exact ? VerifyMode::Exact : VerifyMode::Numeric);
  const auto v = verify_decomposition(p, dec, mode, options.tol);
  const auto fr = flattening_report(p, options.flattening);
  require(fr.max_rank <= dec.size(), ErrorKind::VerificationFailed,
          "flattening rank " + std::to_string(fr.max_rank) + " exceeds decomposition size " +
              std::to_string(dec.size()));
  Real tau = kDefaultRankThreshold;
  if (!req.rank_tol.empty()) {
    try {
      tau = parse_real(req.rank_tol);
    } catch (const Error&) {
      fail(ErrorKind::InvalidInput, "--rank-tol: not a number: " + req.rank_tol);
    }
    require(tau > 0 && tau < 1, ErrorKind::InvalidInput, "--rank-tol must lie in (0, 1)");
  }
  const auto numeric = flattening_report_numeric(p, tau, options.flattening);
  const auto dg = digest(p);
  if (cert.is_object()) {
    if (cert.contains("bound"))
      require(dec.size() <= static_cast<std::size_t>(integer_at(cert["bound"], "/certificate/bound")),
              ErrorKind::VerificationFailed, "decomposition size exceeds the certified bound");
    if (cert.contains("size"))
      require(dec.size() == static_cast<std::size_t>(integer_at(cert["size"], "/certificate/size")),
              ErrorKind::VerificationFailed, "decomposition size differs from the certificate");
    if (cert.contains("digest"))
      require(cert["digest"] == dg, ErrorKind::VerificationFailed, "certificate digest does not match p");
  }
  Response r;
  r.doc = Json{{"schema", kSchema},
               {"status", "ok"},
               {"mode", to_string(v.mode)},
               {"residual", to_string(v.residual)},
               {"size", dec.size()},
               {"flatteningMaxRank", fr.max_rank},
               {"flatteningPartial", fr.partial},
               {"numericFlatteningMaxRank", numeric.max_rank},
               {"rankTol", to_string(tau)},
               {"digest", dg},
               {"certificateChecked", cert.is_object()}};
  r.summary = {std::string("ok: size ") + std::to_string(dec.size()) + ", " + to_string(v.mode) + " residual " +
                   fmt("%.3Le", v.residual),
               "flattening max rank " + std::to_string(fr.max_rank) + " (numeric, tau " + fmt("%.1Le", tau) +
                   ": " + std::to_string(numeric.max_rank) + ")"};
  if (!v.note.empty()) {
    r.doc["notes"] = Json::array({v.note});
    r.summary.push_back("note: " + v.note);
  }
  return r;
}

Response cmd_family(const Request& req) {
  const Json in = load_input(req);
  const auto jet = decode_jet(member(in, "jet", ""), "/jet");
  const auto p = target(in, jet_vectors(jet), jet.format);
  std::vector<Rational> eps;
  if (!req.eps.empty()) {
    for (const auto& e : req.eps) eps.push_back(decode_rational(Json(e), "--eps"));
  } else if (in.contains("epsilons")) {
    eps = decode_rationals(in["epsilons"], "/epsilons");
  } else {
    eps = default_epsilons();
  }
  require(!eps.empty(), ErrorKind::InvalidInput, "no epsilons given");
  Response r;
  Json families = Json::array();
  bool positive = true;
  for (const auto& e : eps) {
    const auto fam = border_family(jet, p, e);
    positive = positive && fam.residual > 0;
    families.push_back(encode(fam));
    r.summary.push_back("eps " + to_string(e) + ": " + std::to_string(fam.decomposition.size()) +
                        " points, residual " + fmt("%.3Le", fam.residual));
  }
  r.doc = Json{{"schema", kSchema}, {"p", encode(p)}, {"families", std::move(families)}};
  if (positive && eps.size() >= 2) {
    const Real slope = residual_slope(jet, p, eps);
    r.doc["slope"] = to_string(slope);
    r.summary.push_back("log-log slope " + fmt("%.3Lf", slope));
  }
  return r;
}

Response execute(const Request& req);

Request entry_request(const Json& e, std::size_t i, const Request& base) {
  const std::string path = "/entries/" + std::to_string(i);
  require(e.is_object(), ErrorKind::InvalidInput, "input:" + path + ": expected an object");
  const auto& cj = member(e, "command", path);
  require(cj.is_string(), ErrorKind::InvalidInput, "input:" + path + "/command: expected a string");
  Request r;
  r.command = cj.get<std::string>();
  require(r.command != "batch", ErrorKind::InvalidInput, "input:" + path + "/command: batches do not nest");
  r.inline_doc = e.contains("input") ? Json(e["input"]) : Json::object();
  r.seed = derive_seed(base.seed, i);
  if (e.contains("seed")) {
    require(e["seed"].is_number_unsigned(), ErrorKind::InvalidInput, "input:" + path + "/seed: expected an unsigned integer");
    r.seed = e["seed"].get<std::uint64_t>();
  }
  r.tol = base.tol;
  if (e.contains("tol")) r.tol = e["tol"].is_string() ? e["tol"].get<std::string>() : e["tol"].dump();
  r.mode = base.mode;
  if (e.contains("mode")) {
    require(e["mode"] == "exact" || e["mode"] == "numeric", ErrorKind::InvalidInput,
            "input:" + path + "/mode: expected \"exact\" or \"numeric\"");
    r.mode = e["mode"] == "exact" ? VerifyMode::Exact : VerifyMode::Numeric;
  }
  for (const char* key : {"k", "x", "c", "alpha"}) {
    if (!e.contains(key)) continue;
    const int v = integer_at(e[key], path + "/" + key);
    auto& slot = key[0] == 'k' ? r.k : key[0] == 'x' ? r.x : key[0] == 'c' ? r.c : r.alpha;
    slot = v;
  }
  if (e.contains("eps"))
    for (const auto& x : decode_rationals(e["eps"], path + "/eps")) r.eps.push_back(to_string(x));
  r.timings = base.timings;
  return r;
}

Response error_response(const std::string& kind, const std::string& message) {
  Response r;
  r.doc = Json{{"schema", kSchema}, {"status", "error"}, {"kind", kind}, {"message", message}};
  r.summary = {"error: " + message};
  return r;
}

Response guarded(const std::function<Response()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    auto r = error_response(to_string(e.kind()), e.what());
    r.code = exit_code(e.kind());
    if (e.residual) r.doc["residual"] = to_string(*e.residual);
    if (e.seed) r.doc["seed"] = *e.seed;
    return r;
  } catch (const nlohmann::json::exception& e) {
    auto r = error_response("InvalidInput", std::string("malformed input: ") + e.what());
    r.code = kExitInvalidInput;
    return r;
  } catch (const std::exception& e) {
    auto r = error_response("Internal", e.what());
    r.code = kExitVerification;
    return r;
  }
}

Response cmd_batch(const Request& req) {
  const Json m = load_input(req);
  const Json& entries = m.is_array() ? m : member(m, "entries", "");
  require(entries.is_array(), ErrorKind::InvalidInput, "input:/entries: expected an array");
  const auto n = entries.size();
  std::vector<Response> results(n);
  const int workers = req.workers > 0 ? req.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (std::size_t i = 0; i < n; ++i)
    results[i] = guarded([&] { return execute(entry_request(entries[i], i, req)); });

  std::size_t passed = 0, certified = 0, compliant = 0;
  Json report = Json::array();
  Response r;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& res = results[i];
    Json e{{"index", i}, {"exit", res.code}};
    if (entries[i].is_object() && entries[i].contains("command")) e["command"] = entries[i]["command"];
    if (res.code == kExitOk) {
      ++passed;
      e["status"] = "ok";
      if (res.doc.contains("certificate")) {
        const auto& c = res.doc["certificate"];
        ++certified;
        const bool ok = c["size"].get<int>() <= c["bound"].get<int>();
        compliant += ok ? 1 : 0;
        e["size"] = c["size"];
        e["bound"] = c["bound"];
        e["boundCompliant"] = ok;
      }
    } else {
      e["status"] = "error";
      e["kind"] = res.doc["kind"];
      e["message"] = res.doc["message"];
      r.summary.push_back("entry " + std::to_string(i) + ": " + res.doc["message"].get<std::string>());
    }
    report.push_back(std::move(e));
  }
  const auto failed = n - passed;
  r.code = failed > 0 ? kExitVerification : kExitOk;
  r.doc = Json{{"schema", kSchema}, {"status", failed > 0 ? "error" : "ok"}, {"total", n},
               {"passed", passed},      {"failed", failed},                 {"certified", certified},
               {"boundCompliant", compliant}, {"entries", std::move(report)}};
  r.summary.insert(r.summary.begin(), "batch: " + std::to_string(n) + " entries, " + std::to_string(passed) +
                                          " passed, " + std::to_string(failed) + " failed, " +
                                          std::to_string(compliant) + "/" + std::to_string(certified) +
                                          " bound-compliant");
  return r;
}

Response execute(const Request& req) {
  const auto& c = req.command;
  if (c == "bound") return cmd_bound(req);
  if (c == "embed") return cmd_embed(req);
  if (c == "decompose") return cmd_decompose(req);
  if (c == "curvilinear") return cmd_curvilinear(req);
  if (c == "witness") return cmd_witness(req);
  if (c == "sylvester") return cmd_sylvester(req);
  if (c == "verify") return cmd_verify(req);
  if (c == "family") return cmd_family(req);
  if (c == "batch") return cmd_batch(req);
  fail(ErrorKind::InvalidInput, "unknown command \"" + c + "\"");
}

// Returns an error message, or nothing when the variable is unset or valid.
std::optional<std::string> apply_precision() {
  const char* env = std::getenv("SECANT3_PRECISION");
  if (env == nullptr) {
    set_working_precision(64);
    return std::nullopt;
  }
  char* end = nullptr;
  const long bits = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || bits < 24 || bits > 64)
    return std::string("SECANT3_PRECISION must be an integer in [24, 64], got \"") + env + "\"";
  set_working_precision(static_cast<int>(bits));
  return std::nullopt;
}

}  // namespace

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::VerificationFailed:
      return kExitVerification;
    case ErrorKind::RetriesExhausted:
      return kExitRetries;
    default:
      return kExitInvalidInput;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Border rank 3 decompositions of partially symmetric tensors, with certificates", "secant3"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Request req;
  bool exact = false, numeric = false, json = false;
  std::string out_path;
  int k = 0, x = 0, c = 0, alpha = 1;
  app.add_option("--in", req.in, "Input JSON file, or inline JSON");
  app.add_option("--seed", req.seed, "Random seed (default 0)");
  app.add_option("--tol", req.tol, "Relative residual tolerance (default 1e-8)");
  auto* exact_flag = app.add_flag("--exact", exact, "Exact verification");
  app.add_flag("--numeric", numeric, "Numeric verification")->excludes(exact_flag);
  app.add_flag("--json", json, "Machine output only");
  app.add_option("--out", out_path, "Write the JSON result here");
  app.add_flag("--timings", req.timings, "Record elapsed time in certificates");

  auto* bound = app.add_subcommand("bound", "Rank bound 2(d_1+..+d_k)-1, or the curvilinear bound with --c");
  bound->add_option("--format", req.format, "Format JSON");
  auto* c_opt = bound->add_option("--c", c, "Total jet degree for the curvilinear bound");
  auto* alpha_opt = bound->add_option("--alpha", alpha, "Number of jet components");
  app.add_subcommand("embed", "Segre-Veronese image of a point");
  app.add_subcommand("decompose", "Decompose p given a border presentation or a tangent");
  app.add_subcommand("curvilinear", "Decompose p in the span of a curvilinear multijet");
  auto* witness = app.add_subcommand("witness", "Border rank 3 witness of rank x on (P^1)^k");
  auto* k_opt = witness->add_option("--k", k, "Number of factors");
  auto* x_opt = witness->add_option("--x", x, "Target rank, 3 <= x <= k-1");
  app.add_subcommand("sylvester", "Rational normal curve decomposition");
  auto* verify = app.add_subcommand("verify", "Re-check a decomposition or certificate");
  verify->add_option("--p", req.p, "Tensor JSON");
  verify->add_option("--dec", req.dec, "Decomposition JSON");
  verify->add_option("--rank-tol", req.rank_tol, "Relative SVD threshold for the numeric flattening ranks (default 1e-10)");
  auto* family = app.add_subcommand("family", "Rank 3 border families along eps");
  family->add_option("--eps", req.eps, "Epsilon values (rationals)");
  auto* batch = app.add_subcommand("batch", "Run a manifest of requests");
  batch->add_option("--workers", req.workers, "Worker threads (default: OpenMP maximum)");

  std::vector<const char*> argv{"secant3"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }
  req.command = app.get_subcommands().front()->get_name();
  if (exact) req.mode = VerifyMode::Exact;
  if (numeric) req.mode = VerifyMode::Numeric;
  if (c_opt->count() > 0) req.c = c;
  if (alpha_opt->count() > 0) req.alpha = alpha;
  if (k_opt->count() > 0) req.k = k;
  if (x_opt->count() > 0) req.x = x;

  Response res;
  if (const auto bad = apply_precision()) {
    res = error_response("InvalidInput", *bad);
    res.code = kExitInvalidInput;
  } else {
    res = guarded([&] { return execute(req); });
  }
  if (res.code == kExitOk && !out_path.empty()) {
    std::ofstream f(out_path);
    f << res.doc.dump(2) << "\n";
    if (!f) {
      res = error_response("InvalidInput", "cannot write " + out_path);
      res.code = kExitInvalidInput;
    }
  }
  if (json) {
    out << res.doc.dump(2) << "\n";
  } else {
    auto& stream = res.code == kExitOk ? out : err;
    for (const auto& line : res.summary) stream << line << "\n";
  }
  if (json && res.code != kExitOk) err << res.summary.front() << "\n";
  return res.code;
}

}  // namespace secant3::cli
