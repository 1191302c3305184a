#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gapbench::parallel {

/// Worker cap for matvecs and experiment work queues. 0 means hardware
/// concurrency. Defaults to 1.
void set_thread_count(std::size_t threads);
std::size_t thread_count();

/// Deterministic mode fixes the reduction blocking independently of the
/// thread count so sums are bit-identical across runs and machines.
void set_deterministic(bool on);
bool deterministic();

/// True on a worker thread spawned by this module. Nested parallel calls
/// run inline there.
bool in_worker();

/// Runs body(begin, end) over disjoint chunks of [0, count). Falls back to a
/// single inline call when count < grain or only one thread is available.
void for_chunks(std::size_t count, std::size_t grain,
                const std::function<void(std::size_t, std::size_t)>& body);

/// Runs task(i) for i in [0, count) on a work queue. Results land at their
/// input index, so output order never depends on scheduling.
template <typename Result, typename Task>
std::vector<Result> map(std::size_t count, Task&& task) {
  std::vector<Result> out(count);
  for_chunks(count, 1, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = task(i);
  });
  return out;
}

/// Neumaier-compensated sum. Blocks are combined in index order.
double sum(std::span<const double> x);

double dot(std::span<const double> x, std::span<const double> y);

}  // namespace gapbench::parallel
