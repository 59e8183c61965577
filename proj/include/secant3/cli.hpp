#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "secant3/errors.hpp"

namespace secant3::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerification = 2;
inline constexpr int kExitInvalidInput = 3;
inline constexpr int kExitRetries = 4;

int exit_code(ErrorKind kind);

// args excludes the program name. Reads SECANT3_PRECISION from the environment.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace secant3::cli
