#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace secant3 {

enum class ErrorKind {
  InvalidInput,
  CapExceeded,
  VerificationFailed,
  NotAnEmbedding,
  DegenerateJet,
  AutarkyViolation,
  RetriesExhausted,
  NotInSpan,
  NotMinimal,
  InvalidPresentation,
  IndependenceFailure,
  NotATangent,
  InvalidRange,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library. The kind drives CLI exit codes;
// residual and seed are attached where the failing operation has them.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  std::optional<long double> residual;
  std::optional<std::uint64_t> seed;

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace secant3
