#pragma once

namespace vitalscan {

// Exit codes: 0 success, 1 domain error (name on stderr), 2 usage or IO error.
int run_cli(int argc, const char* const* argv);

}  // namespace vitalscan
