#pragma once

#include "config.hpp"

namespace cli {

// Runs the configured command, printing a one-line summary on stdout.
// Returns the process exit code: 0 success, 1 validation, 2 numerical/IO.
int dispatch(const RunConfig& config);

}  // namespace cli
