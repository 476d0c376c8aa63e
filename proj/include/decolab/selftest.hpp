#pragma once

#include <iosfwd>

namespace decolab {

// Runs the module invariant suite, printing one line per check.
// Returns true when every check passes.
bool run_selftest(std::ostream& out);

}  // namespace decolab
