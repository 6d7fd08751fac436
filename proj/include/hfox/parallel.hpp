#ifndef HFOX_PARALLEL_HPP
#define HFOX_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace hfox {

/// Number of worker threads used by parallel_for: min(hardware concurrency,
/// HFOX_THREADS) when the environment variable is set, else hardware
/// concurrency. Always at least 1.
std::size_t worker_count();

/// Run fn(i) for i in [0, n). Results must be written to disjoint slots;
/// the partition is static so output is identical to the serial order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace hfox

#endif
