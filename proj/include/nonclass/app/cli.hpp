#pragma once

#include <ostream>

namespace nonclass::app {

namespace exit_code {
constexpr int ok = 0;
constexpr int check_failed = 1;
constexpr int usage = 2;  // bad flags, malformed JSON, unknown family
constexpr int invalid_state = 3;
constexpr int internal = 4;
}  // namespace exit_code

/// Entry point of the nonclass tool. argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nonclass::app
