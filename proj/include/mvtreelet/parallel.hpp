#pragma once

#include <cstddef>
#include <functional>

namespace mvt {

/// Worker count: MVTREELET_THREADS when set (minimum 1), otherwise the
/// hardware concurrency.
std::size_t worker_count();

/// Runs fn(i) for i in [0, n), splitting the range across workers. Results
/// must be written to disjoint slots; fn runs exactly once per index and the
/// output is independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace mvt
