// cli.hpp: command-line front end
//
// Exit codes: 0 success, 1 input error (bad flags, files, parameters),
// 2 numerical failure.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rotodyne {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rotodyne
