#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mubqpd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitUnknownSubcommand = 64;

/// args[0] is the subcommand. One JSON document goes to `out` on success;
/// failures write {"error", "detail"} to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mubqpd::cli
