#pragma once
// Command-line front end.  Lives in the library so tests can drive it.
//
// Exit codes: 0 ok, 1 a check failed, 2 usage, 3 NotExplicit, 4 parse,
// 5 UnknownClass, 6 TruncationUnsafe, 7 NotTightAtTruncation.

#include "decomp/error.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace decomp {

// args excludes the program name
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int exit_code(ErrorKind k);

}  // namespace decomp
