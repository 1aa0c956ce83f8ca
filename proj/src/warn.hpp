#pragma once

#include <complex>
#include <string>
#include <vector>

namespace akweak {

// Truncation and soft-validity warnings.  Operations append here instead of
// failing; callers (CLI, reports) drain the list.  Thread-local so parallel
// callers never interleave.
void warn(const std::string& message);
std::vector<std::string> drain_warnings();
bool has_warnings();

// Warn when the edge amplitude of a sampled function exceeds `frac` of its
// peak (the integrals all extend to +-infinity, so a hot edge means the
// window truncates real mass).
void check_edge_decay(const std::complex<double>* amp, int n, double frac,
                      const std::string& op_name);

}  // namespace akweak
