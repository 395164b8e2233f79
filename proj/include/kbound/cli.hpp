#pragma once

#include <iosfwd>

namespace kbound {

/// Runs the command line. Exit status: 0 success, 1 for bad input, domain or
/// model errors (and usage errors), 2 when a proven invariant failed.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kbound
