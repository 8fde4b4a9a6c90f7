#pragma once

#include "run_config.hpp"

namespace corrdyn::cli {

// Dispatches on c.command and returns the exit status. Domain failures
// propagate as DomainError; bad flag combinations as UsageError.
int run(const RunConfig& c);

}  // namespace corrdyn::cli
