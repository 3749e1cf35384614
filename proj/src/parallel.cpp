#include "anisobesov/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>

namespace anisobesov {

namespace {

constexpr std::size_t kChunks = 64;

int env_thread_override() {
  const char* raw = std::getenv("ANISO_BESOV_THREADS");
  if (raw == nullptr) return 0;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || v < 1) return 0;
  return static_cast<int>(std::min<long>(v, 1024));
}

}  // namespace

int thread_count() {
  if (const int forced = env_thread_override(); forced > 0) return forced;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::size_t chunk_count() { return kChunks; }

void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t,
                                              std::size_t)>& body) {
  if (n == 0) return;
  const std::size_t per = (n + kChunks - 1) / kChunks;
  const std::size_t used = (n + per - 1) / per;
  const int workers =
      std::min<int>(thread_count(), static_cast<int>(used));
  if (workers <= 1) {
    for (std::size_t c = 0; c < used; ++c) {
      const std::size_t lo = c * per;
      body(c, lo, std::min(lo + per, n));
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= used) return;
      const std::size_t lo = c * per;
      body(c, lo, std::min(lo + per, n));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers) - 1);
  for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

double parallel_sum(std::size_t n,
                    const std::function<double(std::size_t)>& term) {
  std::vector<double> partial(kChunks, 0.0);
  parallel_chunks(n, [&](std::size_t c, std::size_t lo, std::size_t hi) {
    double sum = 0.0;
    double comp = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double y = term(i) - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    partial[c] = sum;
  });
  double total = 0.0;
  double comp = 0.0;
  for (double p : partial) {
    const double y = p - comp;
    const double t = total + y;
    comp = (t - total) - y;
    total = t;
  }
  return total;
}

double parallel_max(std::size_t n,
                    const std::function<double(std::size_t)>& term) {
  std::vector<double> partial(kChunks, 0.0);
  parallel_chunks(n, [&](std::size_t c, std::size_t lo, std::size_t hi) {
    double best = 0.0;
    for (std::size_t i = lo; i < hi; ++i) best = std::max(best, term(i));
    partial[c] = best;
  });
  double best = 0.0;
  for (double p : partial) best = std::max(best, p);
  return best;
}

}  // namespace anisobesov
