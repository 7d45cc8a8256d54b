#pragma once

#include <string>
#include <vector>

namespace barrier_reach {

/// Entry point behind the barrier-reach binary; exposed so tests can drive
/// commands in-process. Exit codes: 0 success, 1 usage/config error,
/// 2 runtime failure, 3 validation below an asserted rate.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);

}  // namespace barrier_reach
