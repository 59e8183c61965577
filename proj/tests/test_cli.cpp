#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "secant3/cli.hpp"
#include "secant3/json_io.hpp"

using namespace secant3;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("secant3_cli_" + name)).string();
}

Json read(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return Json::parse(ss.str());
}

void write(const std::string& path, const Json& j) { std::ofstream(path) << j.dump(2); }

const char* kJet =
    R"({"format":{"k":4,"n":[1,1,1,1],"d":[1,1,1,1]},"order":3,)"
    R"("factors":[[[1],[0,1]],[[1],[0,1]],[[1,1],[0,0,1]],[[1],[0,1,1]]]})";

std::string jet3_input() {
  return std::string(R"({"presentation":{"type":"Jet3","jet":)") + kJet + R"(},"spanCoeffs":[1,2,3]})";
}

}  // namespace

TEST_CASE("bound prints 2*sum(d)-1") {
  auto r = run({"bound", "--format", R"({"k":3,"n":[1,1,1],"d":[1,1,1]})"});
  CHECK(r.code == 0);
  CHECK(r.out == "5\n");
  r = run({"bound", "--format", R"({"k":2,"n":[2,1],"d":[3,2]})", "--c", "3", "--alpha", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == std::to_string(2 * 2 + 3 * (5 - 1)) + "\n");
  r = run({"bound", "--json", "--format", R"({"k":1,"n":[2],"d":[4]})"});
  CHECK(Json::parse(r.out)["boundSigma3"] == 7);
}

TEST_CASE("witness bundle and re-verification") {
  const auto path = tmp("witness.json");
  auto r = run({"witness", "--k", "5", "--x", "4", "--seed", "7", "--out", path});
  REQUIRE(r.code == 0);
  const auto bundle = read(path);
  CHECK(bundle["schema"] == kSchema);
  CHECK(bundle["decomposition"]["size"] == 4);
  CHECK(bundle["certificate"]["flatteningMaxRank"] == 3);
  CHECK(bundle["presentation"]["type"] == "Jet3");
  CHECK(bundle["paddedFactors"].size() == 0);
  CHECK(run({"verify", "--in", path}).code == 0);

  r = run({"witness", "--k", "3", "--x", "3"});
  CHECK(r.code == cli::kExitInvalidInput);
  CHECK(r.err.find("InvalidRange") != std::string::npos);
}

TEST_CASE("decompose output re-verifies and is deterministic") {
  const auto a = tmp("dec_a.json"), b = tmp("dec_b.json");
  REQUIRE(run({"decompose", "--in", jet3_input(), "--seed", "3", "--out", a}).code == 0);
  REQUIRE(run({"decompose", "--in", jet3_input(), "--seed", "3", "--out", b}).code == 0);
  CHECK(read(a).dump() == read(b).dump());
  const auto doc = read(a);
  CHECK(doc["certificate"]["case"] == "3c");
  CHECK(doc["certificate"]["size"].get<int>() <= doc["certificate"]["bound"].get<int>());
  CHECK(run({"verify", "--in", a}).code == 0);
  auto v = run({"verify", "--in", a, "--rank-tol", "1e-6", "--json"});
  CHECK(v.code == 0);
  CHECK(Json::parse(v.out)["numericFlatteningMaxRank"] == doc["certificate"]["flatteningMaxRank"]);
  CHECK(run({"verify", "--in", a, "--rank-tol", "2"}).code == cli::kExitInvalidInput);

  // --json prints exactly the document.
  auto r = run({"decompose", "--in", jet3_input(), "--seed", "3", "--json"});
  CHECK(Json::parse(r.out).dump() == doc.dump());
}

TEST_CASE("decompose a tangent and a three-point presentation exactly") {
  const auto t = R"({"tangent":{"format":{"k":3,"n":[1,1,1],"d":[1,1,1]},)"
                 R"("support":[[1,0],[1,0],[1,0]],"direction":[[0,1],[0,1],[0,1]]},"spanCoeffs":[0,1]})";
  auto r = run({"decompose", "--in", t, "--json"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["certificate"]["size"] == 3);

  const auto three = R"({"presentation":{"type":"ThreePoints","format":{"k":2,"n":[1,1],"d":[1,1]},)"
                     R"("points":[[[1,0],[1,0]],[[0,1],[0,1]],[[1,1],[1,-1]]]},"spanCoeffs":[1,"1/2",-3]})";
  r = run({"decompose", "--in", three, "--exact", "--json"});
  REQUIRE(r.code == 0);
  const auto doc = Json::parse(r.out);
  CHECK(doc["decomposition"]["field"] == "exact");
  CHECK(doc["certificate"]["mode"] == "exact");
}

TEST_CASE("curvilinear subcommand") {
  const auto in = std::string(R"({"multijet":{"components":[)") + kJet + R"(]},"spanCoeffs":[1,2,3]})";
  auto r = run({"curvilinear", "--in", in, "--json"});
  REQUIRE(r.code == 0);
  const auto c = Json::parse(r.out)["certificate"];
  CHECK(c["size"].get<int>() <= c["bound"].get<int>());
}

TEST_CASE("verify rejects a corrupted decomposition") {
  const auto d = tmp("good.json");
  REQUIRE(run({"decompose", "--in", jet3_input(), "--out", d}).code == 0);
  auto doc = read(d);
  write(tmp("p.json"), doc["p"]);
  auto bad = doc;
  bad["decomposition"]["terms"][0]["coeff"][0] = "0.5";
  write(tmp("bad.json"), bad["decomposition"]);
  auto r = run({"verify", "--p", tmp("p.json"), "--dec", tmp("bad.json"), "--exact"});
  CHECK(r.code == cli::kExitVerification);

  // Certificate mismatch alone also fails.
  auto forged = doc;
  forged["certificate"]["digest"] = "0000000000000000";
  write(tmp("forged.json"), forged);
  CHECK(run({"verify", "--in", tmp("forged.json")}).code == cli::kExitVerification);
}

TEST_CASE("schema violations are line anchored") {
  auto r = run({"bound", "--format", "{\"k\":3,\n\"n\":[1,1,1] \"d\":[1,1,1]}"});
  CHECK(r.code == cli::kExitInvalidInput);
  CHECK(r.err.find("<inline>:2:") != std::string::npos);

  r = run({"decompose", "--in", R"({"presentation":{"type":"Jet3","jet":{"order":3}},"spanCoeffs":[1]})"});
  CHECK(r.code == cli::kExitInvalidInput);
  CHECK(r.err.find("/presentation/jet") != std::string::npos);

  r = run({"decompose", "--in", R"({"schema":"secant3/9"})"});
  CHECK(r.code == cli::kExitInvalidInput);

  r = run({"decompose", "--in", tmp("does_not_exist.json")});
  CHECK(r.code == cli::kExitInvalidInput);

  CHECK(run({"frobnicate"}).code == cli::kExitInvalidInput);
  CHECK(run({}).code == cli::kExitInvalidInput);
  CHECK(run({"bound", "--exact", "--numeric"}).code == cli::kExitInvalidInput);
}

TEST_CASE("SECANT3_PRECISION") {
  const std::vector<std::string> args{"bound", "--format", R"({"k":1,"n":[1],"d":[2]})"};
  setenv("SECANT3_PRECISION", "80", 1);
  CHECK(run(args).code == cli::kExitInvalidInput);
  setenv("SECANT3_PRECISION", "abc", 1);
  CHECK(run(args).code == cli::kExitInvalidInput);
  setenv("SECANT3_PRECISION", "53", 1);
  CHECK(run(args).code == 0);
  CHECK(working_precision() == 53);
  unsetenv("SECANT3_PRECISION");
  CHECK(run(args).code == 0);
  CHECK(working_precision() == 64);
}

TEST_CASE("sylvester, family and embed subcommands") {
  auto r = run({"sylvester", "--in", R"({"q":[1,0,0,0,1]})", "--json"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["rnc"]["size"] == 2);

  r = run({"sylvester", "--in", R"({"a":6,"c":3,"b":[1,2,3]})", "--json"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["rnc"]["size"] == 6 + 2 - 3);

  r = run({"family", "--in", std::string(R"({"jet":)") + kJet + R"(,"spanCoeffs":[1,2,3]})", "--json"});
  REQUIRE(r.code == 0);
  const auto fam = Json::parse(r.out);
  CHECK(fam["families"].size() == 4);
  CHECK(parse_real(fam["slope"].get<std::string>()) > 0.9L);

  r = run({"family", "--in", std::string(R"({"jet":)") + kJet + R"(,"spanCoeffs":[1,2,3]})", "--eps", "0"});
  CHECK(r.code == cli::kExitInvalidInput);

  r = run({"embed", "--in", R"({"format":{"k":2,"n":[1,1],"d":[2,1]},"point":[[1,2],["1/2",1]]})", "--json"});
  REQUIRE(r.code == 0);
  // x^2 * y over monomials a0^2, a0 a1, a1^2 times b0, b1: coefficient of a1^2 b1 is 4.
  CHECK(Json::parse(r.out)["coeffs"].back() == "4");
}

TEST_CASE("batch") {
  auto r = run({"batch", "--in", R"({"entries":[]})", "--json"});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["total"] == 0);

  Json m{{"entries", Json::array()}};
  m["entries"].push_back(Json{{"command", "bound"}, {"input", Json::parse(R"({"format":{"k":1,"n":[1],"d":[3]}})")}});
  m["entries"].push_back(Json{{"command", "decompose"}, {"input", Json::parse(jet3_input())}});
  m["entries"].push_back(Json{{"command", "witness"}, {"k", 4}, {"x", 3}});
  m["entries"].push_back(Json{{"command", "decompose"}, {"input", Json::parse(R"({"presentation":{}})")}});
  const auto path = tmp("manifest.json");
  write(path, m);
  r = run({"batch", "--in", path, "--json"});
  CHECK(r.code == cli::kExitVerification);
  const auto rep = Json::parse(r.out);
  CHECK(rep["total"] == 4);
  CHECK(rep["passed"] == 3);
  CHECK(rep["failed"] == 1);
  CHECK(rep["certified"] == 2);
  CHECK(rep["boundCompliant"] == 2);
  CHECK(rep["entries"][3]["status"] == "error");
  CHECK(rep["entries"][3]["kind"] == "InvalidInput");

  m["entries"].erase(3);
  write(path, m);
  CHECK(run({"batch", "--in", path}).code == 0);

  CHECK(run({"batch", "--in", R"({"entries":[{"command":"batch"}]})"}).code == cli::kExitVerification);
}

TEST_CASE("exit code contract") {
  CHECK(cli::exit_code(ErrorKind::VerificationFailed) == 2);
  CHECK(cli::exit_code(ErrorKind::InvalidInput) == 3);
  CHECK(cli::exit_code(ErrorKind::InvalidPresentation) == 3);
  CHECK(cli::exit_code(ErrorKind::RetriesExhausted) == 4);
}

TEST_CASE("json round trips") {
  // Decoding then encoding canonicalizes (integers become rational strings); a
  // second pass must be the identity.
  const auto canon_jet = [](const Json& j) { return encode(decode_jet(j, "")); };
  const auto canon_pres = [](const Json& j) { return encode(decode_presentation(j, "")); };
  const auto j = canon_jet(Json::parse(kJet));
  CHECK(j["factors"][2][1] == Json::parse(R"(["0","0","1"])"));
  CHECK(canon_jet(j).dump() == j.dump());
  const auto pres = canon_pres(Json::parse(jet3_input())["presentation"]);
  CHECK(canon_pres(pres).dump() == pres.dump());
  const auto two = canon_pres(Json::parse(
      std::string(R"({"type":"TwoTangentsOnLine","v":)") + kJet + R"(,"w":)" + kJet + R"(,"sharedFactor":2})"));
  CHECK(two["sharedFactor"] == 2);
  CHECK(canon_pres(two).dump() == two.dump());

  auto r = run({"decompose", "--in", jet3_input(), "--json"});
  const auto dec = Json::parse(r.out)["decomposition"];
  CHECK(encode(decode_decomposition(dec, "")).dump() == dec.dump());
  CHECK(decode_rational(Json("-6/4"), "") == Rational(-3, 2));
  CHECK(encode(Rational(5)) == "5");
}
