#pragma once

#include <cstddef>
#include <functional>

namespace pansphere {

/// Worker count from PANSPHERE_JOBS, falling back to hardware concurrency.
std::size_t default_jobs() noexcept;

/// Runs body(i) for i in [0, count) over at most `jobs` threads (0 means
/// default_jobs()). Iterations must be independent. The first exception
/// thrown by any iteration is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t jobs = 0);

}  // namespace pansphere
