#pragma once

#include <string>
#include <vector>

namespace apisynth {

// Entry point behind main(). Exit codes: 0 success, 2 usage error,
// 3 bad input (unreadable/malformed files, unknown locations in a query).
int run_cli(const std::vector<std::string>& args);

} // namespace apisynth
