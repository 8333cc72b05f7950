#pragma once

#include <iosfwd>

namespace vdt {

// Runs the oracle-backed example suite (independent brute-force checks against
// each learning and retrieval component), printing one line per check.
// Returns the number of failed checks.
int selftest(std::ostream& out);

}  // namespace vdt
