#ifndef GOWERS_COMPUTE_H_
#define GOWERS_COMPUTE_H_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string_view>

namespace gowers {

using Complex = std::complex<double>;

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

// Resource limits shared by every expensive operation.
//
// `budget` caps the number of scalar multiply-adds (or table entries, for
// operations that materialize tables) a single call may perform. `threads`
// only changes how work is scheduled: all reductions combine per-item
// partial results in a fixed tree order, so results are bit-identical for
// every thread count.
struct ComputeOptions {
  std::uint64_t budget = kDefaultBudget;
  int threads = 1;
};

// Throws CapacityError when `cost` exceeds `options.budget`.
void check_budget(std::uint64_t cost, const ComputeOptions& options,
                  std::string_view what);

// Saturating a*b for cost estimates.
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t saturating_pow(std::uint64_t base, unsigned exponent);

// Runs fn(i) for i in [0, count). Items are split into contiguous chunks, one
// per worker. fn must only write to per-item storage.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn);

// Pairwise sum in a fixed tree order (independent of how the items were
// produced).
Complex tree_sum(std::span<const Complex> items);
double tree_sum(std::span<const double> items);

// std::mt19937_64 with hand-written mappings to integers and doubles, since
// the standard distributions are implementation-defined and would break
// cross-platform reproducibility.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next_u64();
  // Uniform in [0, bound).
  std::uint64_t uniform(std::uint64_t bound);
  // Uniform in [0, 1).
  double uniform_real();
  // Uniform on the unit circle.
  Complex unit_phase();
  // Uniform in the closed unit disk.
  Complex unit_disk();

 private:
  std::mt19937_64 engine_;
};

}  // namespace gowers

#endif  // GOWERS_COMPUTE_H_
