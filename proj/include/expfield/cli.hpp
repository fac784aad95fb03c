#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace expfield {

enum ExitStatus { kExitOk = 0, kExitAssertion = 1, kExitInput = 2, kExitResource = 3 };

// Runs one `expfield <command> <doc.efd> args... [flags]` invocation; args
// excludes the program name. The report goes to out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace expfield
