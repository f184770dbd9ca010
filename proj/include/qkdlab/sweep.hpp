#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

// Deterministic sweep helpers: worker fan-out over index ranges and the
// fixed CSV number format shared by the CLI and tests.

namespace qkdlab {

// Worker count: QKDLAB_THREADS caps the pool; 0 or unset means all cores.
unsigned worker_count();

// Runs fn(i) for i in [0, n) across workers. Results must be written to
// preallocated slots so the outcome is identical for any worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Lower-case scientific notation with 12 significant digits.
std::string format_sci(double v);

// Uniform grid of `points` values over [lo, hi] inclusive.
std::vector<double> linspace(double lo, double hi, int points);

// Log-spaced grid of `points` values over [lo, hi] inclusive.
std::vector<double> logspace(double lo, double hi, int points);

}  // namespace qkdlab
