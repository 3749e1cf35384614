#include <cmath>
#include <cstdlib>
#include <vector>

#include "anisobesov/parallel.hpp"
#include "doctest.h"

using namespace anisobesov;

namespace {

// Terms with wildly mixed magnitudes to exercise the compensated sum.
double term(std::size_t i) {
  return (i % 3 == 0 ? 1.0e12 : 1.0) / (1.0 + static_cast<double>(i));
}

}  // namespace

TEST_CASE("parallel sum is identical across thread counts") {
  const std::size_t n = 100003;
  setenv("ANISO_BESOV_THREADS", "1", 1);
  const double serial = parallel_sum(n, term);
  setenv("ANISO_BESOV_THREADS", "7", 1);
  const double threaded = parallel_sum(n, term);
  unsetenv("ANISO_BESOV_THREADS");
  const double fresh = parallel_sum(n, term);
  CHECK(serial == threaded);
  CHECK(serial == fresh);
}

TEST_CASE("parallel sum agrees with long-double reference") {
  const std::size_t n = 50000;
  long double ref = 0.0L;
  for (std::size_t i = 0; i < n; ++i) ref += term(i);
  CHECK(parallel_sum(n, term) ==
        doctest::Approx(static_cast<double>(ref)).epsilon(1e-14));
}

TEST_CASE("parallel max finds the maximum") {
  const std::size_t n = 12345;
  auto f = [](std::size_t i) {
    return std::sin(static_cast<double>(i) * 0.1) +
           (i == 9876 ? 10.0 : 0.0);
  };
  CHECK(parallel_max(n, f) == doctest::Approx(f(9876)));
  CHECK(parallel_max(0, f) == 0.0);
  CHECK(parallel_sum(0, f) == 0.0);
}

TEST_CASE("chunk partition covers the range exactly once") {
  const std::size_t n = 999;
  std::vector<int> hits(n, 0);
  parallel_chunks(n, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) hits[i]++;
  });
  for (std::size_t i = 0; i < n; ++i) CHECK(hits[i] == 1);
}

TEST_CASE("thread override is read from the environment") {
  setenv("ANISO_BESOV_THREADS", "3", 1);
  CHECK(thread_count() == 3);
  setenv("ANISO_BESOV_THREADS", "garbage", 1);
  CHECK(thread_count() >= 1);
  unsetenv("ANISO_BESOV_THREADS");
  CHECK(thread_count() >= 1);
}
