#pragma once

namespace milnorkit::cli {

/// Exit codes: 0 success / path certified, 1 computation error, 2 counterexample,
/// 3 inconclusive, 64 usage error.
inline constexpr int kExitError = 1;
inline constexpr int kExitCounterexample = 2;
inline constexpr int kExitInconclusive = 3;
inline constexpr int kExitUsage = 64;

int run(int argc, char** argv);

}  // namespace milnorkit::cli
