#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sepscore::cli {

/// Runs one CLI invocation. `args` excludes the program name. Returns the
/// process exit code: 0 success, 1 usage error, 2 data error, 3 computation
/// error; errors leave a one-line diagnostic on `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sepscore::cli
