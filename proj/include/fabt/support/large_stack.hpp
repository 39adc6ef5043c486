#pragma once

#include <cstddef>
#include <functional>

namespace fabt {

/// Term operations recurse over term structure, and generated
/// back-translation terms nest thousands of levels deep. Entry points
/// (CLI, test mains) run their work on a thread with a large stack.
inline constexpr std::size_t kLargeStackBytes = std::size_t{1} << 30;

/// Runs fn on a fresh thread with the given stack size and returns its
/// result. Exceptions thrown by fn are rethrown in the caller.
int run_with_large_stack(const std::function<int()>& fn, std::size_t stack_bytes = kLargeStackBytes);

/// Calls body(i) for every i in [0, count) on up to `workers` large-stack
/// threads. Order of execution is unspecified; the first exception (by
/// index) is rethrown after all workers finish.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body,
                  std::size_t stack_bytes = std::size_t{256} << 20);

/// Worker count used by the harness when none is configured.
std::size_t default_workers();

}  // namespace fabt
