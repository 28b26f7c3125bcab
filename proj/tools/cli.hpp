#pragma once

#include <iosfwd>

namespace dkp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitVerification = 3;

/// Entry point of the dkp command; output goes to `out` unless --output names a file.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dkp::cli
