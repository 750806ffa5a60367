#pragma once

#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sslo {

inline constexpr double kPi = std::numbers::pi;

// Raised when an iterative or adaptive computation fails to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Worker count used by parallel loops when none is given explicitly.
unsigned default_thread_count();
void set_default_thread_count(unsigned threads);

// Runs body(i) for i in [0, n). Iterations are split into contiguous chunks, one per
// worker, so results written to slot i are independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned threads = 0);

}  // namespace sslo
