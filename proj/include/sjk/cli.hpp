#pragma once

#include <iosfwd>

namespace sjk::cli {

/// Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 domain error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sjk::cli
