#pragma once

#include <cstddef>
#include <functional>

namespace padicfit::detail {

/// Runs fn(0) .. fn(count-1) on up to `threads` worker threads. Tasks must
/// write only to their own slots; the first exception (if any) is rethrown
/// on the calling thread after all workers join.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace padicfit::detail
