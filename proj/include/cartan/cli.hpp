#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cartan {

// Routes one CLI invocation. Exit codes: 0 success, 1 domain error (with a
// structured JSON error record on stdout), 2 verification failure, 64 usage.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cartan
