#include "gapbench/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace gapbench::parallel {
namespace {

std::atomic<std::size_t> g_threads{1};
std::atomic<bool> g_deterministic{false};
thread_local bool t_in_worker = false;

constexpr std::size_t kReductionBlock = 4096;
// Below this length a reduction is not worth a thread launch.
constexpr std::size_t kParallelMinimum = std::size_t{1} << 16;

struct Neumaier {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

std::size_t effective_threads() {
  std::size_t t = g_threads.load();
  if (t == 0) t = std::max<unsigned>(1, std::thread::hardware_concurrency());
  return t;
}

// Block count for a reduction of `count` items. Depends only on `count` in
// deterministic mode.
std::size_t reduction_blocks(std::size_t count) {
  if (count == 0) return 1;
  if (g_deterministic.load()) return (count + kReductionBlock - 1) / kReductionBlock;
  return std::min(count, effective_threads());
}

}  // namespace

void set_thread_count(std::size_t threads) { g_threads.store(threads); }
std::size_t thread_count() { return effective_threads(); }
void set_deterministic(bool on) { g_deterministic.store(on); }
bool deterministic() { return g_deterministic.load(); }
bool in_worker() { return t_in_worker; }

void for_chunks(std::size_t count, std::size_t grain,
                const std::function<void(std::size_t, std::size_t)>& body) {
  if (count == 0) return;
  const std::size_t threads = std::min(effective_threads(), count);
  if (threads <= 1 || t_in_worker || count < grain) {
    body(0, count);
    return;
  }
  const std::size_t chunk = std::max<std::size_t>(grain, count / (threads * 4));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    t_in_worker = true;
    for (;;) {
      const std::size_t begin = next.fetch_add(chunk);
      if (begin >= count) break;
      try {
        body(begin, std::min(count, begin + chunk));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

double sum(std::span<const double> x) {
  const std::size_t blocks = reduction_blocks(x.size());
  const std::size_t width = (x.size() + blocks - 1) / std::max<std::size_t>(blocks, 1);
  std::vector<double> partial(blocks, 0.0);
  const std::size_t grain = x.size() >= kParallelMinimum ? 2 : blocks + 1;
  for_chunks(blocks, grain, [&](std::size_t b0, std::size_t b1) {
    for (std::size_t b = b0; b < b1; ++b) {
      Neumaier acc;
      const std::size_t end = std::min(x.size(), (b + 1) * width);
      for (std::size_t i = b * width; i < end; ++i) acc.add(x[i]);
      partial[b] = acc.value();
    }
  });
  Neumaier total;
  for (double p : partial) total.add(p);
  return total.value();
}

double dot(std::span<const double> x, std::span<const double> y) {
  const std::size_t blocks = reduction_blocks(x.size());
  const std::size_t width = (x.size() + blocks - 1) / std::max<std::size_t>(blocks, 1);
  std::vector<double> partial(blocks, 0.0);
  const std::size_t grain = x.size() >= kParallelMinimum ? 2 : blocks + 1;
  for_chunks(blocks, grain, [&](std::size_t b0, std::size_t b1) {
    for (std::size_t b = b0; b < b1; ++b) {
      double acc = 0.0;
      const std::size_t end = std::min(x.size(), (b + 1) * width);
      for (std::size_t i = b * width; i < end; ++i) acc += x[i] * y[i];
      partial[b] = acc;
    }
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace gapbench::parallel
