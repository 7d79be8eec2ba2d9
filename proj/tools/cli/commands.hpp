#pragma once

#include <cstdint>
#include <ostream>
#include <string_view>

namespace ruin::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNotConverged = 3;

/// Environment variable consulted for the default simulation seed.
inline constexpr const char* kSeedEnv = "RUIN_SEED";
inline constexpr std::uint64_t kDefaultSeed = 1;

struct Range {
  std::uint64_t first;
  std::uint64_t last;
};

/// "a..b" or a single integer "a". Throws std::invalid_argument when
/// malformed or when a > b.
Range parse_range(std::string_view text);

/// Dispatches argv to a subcommand. Data goes to `out`, diagnostics to
/// `err`; the return value is the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ruin::cli
