#include "gowers/compute.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "gowers/error.h"

namespace gowers {

void check_budget(std::uint64_t cost, const ComputeOptions& options,
                  std::string_view what) {
  if (cost > options.budget) {
    throw CapacityError(std::string(what) + ": estimated cost " +
                        std::to_string(cost) + " exceeds budget " +
                        std::to_string(options.budget));
  }
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::uint64_t saturating_pow(std::uint64_t base, unsigned exponent) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exponent; ++i) result = saturating_mul(result, base);
  return result;
}

void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([begin, end, &fn] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
}

namespace {

template <typename T>
T tree_sum_impl(std::span<const T> items) {
  if (items.empty()) return T{};
  std::vector<T> level(items.begin(), items.end());
  while (level.size() > 1) {
    std::vector<T> next((level.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i) {
      const std::size_t a = 2 * i;
      next[i] = a + 1 < level.size() ? level[a] + level[a + 1] : level[a];
    }
    level.swap(next);
  }
  return level[0];
}

}  // namespace

Complex tree_sum(std::span<const Complex> items) { return tree_sum_impl(items); }
double tree_sum(std::span<const double> items) { return tree_sum_impl(items); }

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next_u64() { return engine_(); }

std::uint64_t Rng::uniform(std::uint64_t bound) {
  if (bound <= 1) return 0;
  // Rejection sampling keeps the distribution exact.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % bound;
}

double Rng::uniform_real() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

Complex Rng::unit_phase() {
  return std::polar(1.0, 2.0 * std::numbers::pi * uniform_real());
}

Complex Rng::unit_disk() {
  return std::polar(std::sqrt(uniform_real()),
                    2.0 * std::numbers::pi * uniform_real());
}

}  // namespace gowers
