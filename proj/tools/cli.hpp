#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace weilcode::cli {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kUsage = 2 };

// args excludes the program name. Artifacts (values, tables, TSV, matrices)
// go to `out` or --output; verdicts and diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace weilcode::cli
