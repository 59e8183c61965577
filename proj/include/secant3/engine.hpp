#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "secant3/curves.hpp"
#include "secant3/decomposition.hpp"
#include "secant3/flatten.hpp"
#include "secant3/format.hpp"
#include "secant3/jet.hpp"

namespace secant3 {

int bound_sigma3(const Format& format);
// c is the total degree of the curvilinear scheme, alpha its number of
// connected components.
int bound_curvilinear(const Format& format, int c, int alpha);

// Normal forms of a border-rank-3 scheme Gamma.
struct ThreePoints {
  Format format;
  std::array<ExactPoint, 3> x;
};
struct PointPlusTangent {
  ExactPoint a;
  JetScheme jet;  // order 2
};
struct Jet3 {
  JetScheme jet;  // order 3
};
struct TwoTangentsOnLine {
  JetScheme v, w;  // order 2, supports differing only in factor shared_factor
  int shared_factor = 0;  // 0-based
};

using BorderPresentation = std::variant<ThreePoints, PointPlusTangent, Jet3, TwoTangentsOnLine>;

const Format& format_of(const BorderPresentation& pres);
// "3a" .. "3d"
const char* case_label(const BorderPresentation& pres);
// Throws InvalidPresentation when an invariant of the normal form fails.
void validate(const BorderPresentation& pres);
// Spanning vectors of <nu(Gamma)>: the embedded points and jet vectors.
std::vector<PSTensor> presentation_vectors(const BorderPresentation& pres);
// Points become order-1 jets.
MultiJet to_multijet(const BorderPresentation& pres);

// Tangent vector at `support` pointing along `direction` (one vector per factor).
struct TangentPresentation {
  ExactPoint support;
  std::vector<std::vector<Rational>> direction;
};

TangentPresentation tangent_of(const JetScheme& jet);
JetScheme tangent_jet(const Format& format, const TangentPresentation& t);
// Factors (0-based) where the direction is not a multiple of the support.
std::vector<int> tangent_support(const TangentPresentation& t);

// Restriction of every factor to the span of the scheme's projection, with
// factors whose projection is a single point removed.
struct AutarkyReduction {
  Format original;
  Format reduced;
  std::vector<int> kept;  // original index of each reduced factor
  // Per original factor: basis rows of <pi_i(Gamma)>; a single row (the fixed
  // point) for dropped factors.
  std::vector<std::vector<std::vector<Rational>>> basis;

  bool is_identity() const;
  bool dropped(int i) const { return basis.at(static_cast<std::size_t>(i)).size() == 1; }

  JetScheme reduce(const JetScheme& z) const;
  JetScheme lift(const JetScheme& z) const;
  ExactPoint reduce(const ExactPoint& x) const;
  ExactPoint lift(const ExactPoint& x) const;
  ApproxPoint lift(const ApproxPoint& x) const;
  Decomposition lift(const Decomposition& dec) const;
  // p' in the reduced space whose lift is p, given the reduced components.
  PSTensor reduce_tensor(const std::vector<JetScheme>& reduced_components, const PSTensor& p) const;
};

AutarkyReduction autarky_reduce(const MultiJet& mj);
AutarkyReduction autarky_reduce(const BorderPresentation& pres);
BorderPresentation reduce_presentation(const AutarkyReduction& r, const BorderPresentation& pres);

// Smallest c' <= order with p in the span of the first c' jet vectors.
int minimalize_presentation(const JetScheme& jet, const PSTensor& p);

struct EngineOptions {
  std::uint64_t seed = 0;
  Real tol = kDefaultVerifyTolerance;
  int retries = 32;
  VerifyMode mode = VerifyMode::Numeric;
  bool timings = false;
  FlatteningOptions flattening;
};

struct Certificate {
  std::string digest;  // FNV-1a of the input tensor
  int bound = 0;
  std::size_t size = 0;
  VerifyMode mode = VerifyMode::Numeric;
  Real residual = 0;
  std::size_t flattening_max_rank = 0;
  bool flattening_partial = false;
  std::optional<Real> slope;
  std::uint64_t seed = 0;
  std::string status = "ok";
  bool fallback = false;
  std::string case_label;
  std::vector<std::string> notes;
  std::optional<double> elapsed_ms;
};

struct EngineResult {
  Decomposition decomposition;
  Certificate certificate;
};

std::string digest(const PSTensor& p);

// Size sum_{i in E} d_i, or 1 when p is the support point itself.
Decomposition decompose_tangent(const TangentPresentation& t, const PSTensor& p, const EngineOptions& options = {});

EngineResult decompose_sigma3(const BorderPresentation& pres, const PSTensor& p, const EngineOptions& options = {});

EngineResult decompose_curvilinear(const MultiJet& mj, const PSTensor& p, const EngineOptions& options = {});

// Runs verification and the flattening report and fills the certificate.
Certificate certify(const PSTensor& p, const Decomposition& dec, int bound, const EngineOptions& options);

}  // namespace secant3
