#pragma once

#include <ostream>

namespace optoconj::cli {

// Exit codes: 0 ok, 1 internal failure, 2 invalid config or arguments,
// 3 regime unavailable, 4 echo plan mismatch.
enum Exit : int { Ok = 0, Failure = 1, BadInput = 2, NoRegime = 3, BadPlan = 4 };

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace optoconj::cli
