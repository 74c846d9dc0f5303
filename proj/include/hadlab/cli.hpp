#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hadlab {

enum ExitCode : int { kExitOk = 0, kExitPropertyFalse = 1, kExitInvalidInput = 2, kExitAmbiguous = 3 };

struct RunContext {
  bool catalog_enabled = true;
};

/// Runs one hadlab command; `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                const RunContext& context = {});

}  // namespace hadlab
