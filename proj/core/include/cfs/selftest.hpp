#pragma once

#include <cstdint>
#include <iosfwd>

namespace cfs {

// Runs the cross-module invariant battery (algebraic identities, counting
// sequences, matrix structure, quadrature consistency, CSTR calibration).
// Prints one line per check; returns true iff everything passed.
// quick mode trims trial counts and degrees for a fast smoke run.
bool run_selftest(std::ostream& os, std::uint64_t seed, bool quick = false);

}  // namespace cfs
