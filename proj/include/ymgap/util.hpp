#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>

namespace ymgap {

// All throwing paths funnel through these so messages carry a module prefix.
[[noreturn]] void fail(const std::string& module, const std::string& what);

void require(bool cond, const std::string& module, const std::string& what);

// Worker cap for data-parallel loops. Reads YMGAP_THREADS once; values < 1
// fall back to 1. Single-threaded loops stay byte-deterministic, and the
// parallel paths below only ever write disjoint slots, so results do not
// depend on the cap.
int thread_cap();

// Runs fn(i) for i in [0, n). Splits into contiguous chunks when more than
// one worker is allowed. fn must not touch shared mutable state outside its
// own index.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

// Single RNG type used everywhere randomness is needed; every caller takes
// an explicit seed so runs reproduce bit-for-bit.
using Rng = std::mt19937_64;

// Shortest decimal form that round-trips a double (%.17g trimmed).
std::string format_double(double x);

}  // namespace ymgap
