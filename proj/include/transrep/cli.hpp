#pragma once

#include <iosfwd>

namespace transrep {

/// Entry point of the command line tool, testable in-process.
/// Exit codes: 0 success, 1 input error, 2 field exhausted, 3 verification failure.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace transrep
