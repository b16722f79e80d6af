#include "ymgap/util.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <thread>
#include <vector>

namespace ymgap {

void fail(const std::string& module, const std::string& what) {
  throw std::runtime_error("[" + module + "] " + what);
}

void require(bool cond, const std::string& module, const std::string& what) {
  if (!cond) fail(module, what);
}

int thread_cap() {
  static const int cap = [] {
    const char* env = std::getenv("YMGAP_THREADS");
    if (env != nullptr) {
      const long v = std::strtol(env, nullptr, 10);
      if (v >= 1) return static_cast<int>(std::min(v, 64L));
      return 1;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
  }();
  return cap;
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
  const int workers = static_cast<int>(std::min<std::int64_t>(thread_cap(), n));
  if (workers <= 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::int64_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t lo = w * chunk;
    const std::int64_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::int64_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::string format_double(double x) {
  // %.17g always round-trips; try shorter forms first so CSV stays readable.
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == x) return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace ymgap
