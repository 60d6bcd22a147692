#pragma once

// Built-in verification battery behind `linklab selftest`: re-runs the
// integral-representation oracles against the production special functions
// and spot-checks the simulator's determinism and kernel equivalence.
// Prints one line per check; returns the number of failed checks.

#include <ostream>

namespace linklab {

int run_selftest(std::ostream& out);

} // namespace linklab
