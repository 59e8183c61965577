#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "secant3/decomposition.hpp"
#include "secant3/engine.hpp"
#include "secant3/flatten.hpp"
#include "secant3/format.hpp"
#include "secant3/jet.hpp"
#include "secant3/sylvester.hpp"
#include "secant3/witness.hpp"

namespace secant3 {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "secant3/1";

// Parses text; syntax errors become InvalidInput "<source>:<line>:<col>: ...".
Json parse_json_text(const std::string& text, const std::string& source);

// Decoders take the JSON pointer of the value for error messages.
Rational decode_rational(const Json& j, const std::string& path);
std::vector<Rational> decode_rationals(const Json& j, const std::string& path);
Format decode_format(const Json& j, const std::string& path);
PSTensor decode_tensor(const Json& j, const std::string& path);
ExactPoint decode_point(const Json& j, const Format& format, const std::string& path);
JetScheme decode_jet(const Json& j, const std::string& path);
MultiJet decode_multijet(const Json& j, const std::string& path);
BorderPresentation decode_presentation(const Json& j, const std::string& path);
// Format is taken from j["format"].
TangentPresentation decode_tangent(const Json& j, const Format& format, const std::string& path);
Decomposition decode_decomposition(const Json& j, const std::string& path);

Json encode(const Rational& x);
Json encode(const Complex& x);
Json encode(const Format& f);
Json encode(const PSTensor& p);
Json encode(const ExactPoint& x);
Json encode(const ApproxPoint& x);
Json encode(const JetScheme& z);
Json encode(const MultiJet& mj);
Json encode(const BorderPresentation& pres);
Json encode(const Decomposition& dec);
Json encode(const Certificate& c);
Json encode(const RncDecomposition& r);
Json encode(const FlatteningReport& r);
Json encode(const WitnessBundle& w);
Json encode(const BorderFamily& f);

// Member lookup that fails with the path when the key is missing.
const Json& member(const Json& j, const char* key, const std::string& path);

}  // namespace secant3
