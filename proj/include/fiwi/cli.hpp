#pragma once

#include <string>
#include <vector>

namespace fiwi {

// Entry point behind tools/fiwi_main.cpp, separated so tests can drive
// the command surface in-process. Returns the process exit code
// (0 success, 2 usage/config/IO errors).
int cli_main(const std::vector<std::string>& args);

}  // namespace fiwi
