#pragma once

#include <cstddef>
#include <functional>

namespace omlat {

/// Worker cap: OMLAT_THREADS if set and positive, else hardware concurrency.
std::size_t worker_count();

/// Splits [0, count) into `blocks` contiguous ranges and runs
/// body(block, begin, end) for each, on up to worker_count() threads. Callers
/// reduce per-block results in block order, so totals do not depend on
/// scheduling.
void parallel_blocks(std::size_t count, std::size_t blocks,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

}  // namespace omlat
