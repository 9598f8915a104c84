#ifndef GOWERS_MODULAR_H_
#define GOWERS_MODULAR_H_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gowers {

// Dense row-major matrix over Z/p^m.
struct ModMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> entries;

  ModMatrix() = default;
  ModMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, 0) {}
  std::int64_t& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
  std::int64_t at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

// One cyclic summand of a kernel: all multiples of `generator`, which has
// additive order p^log_order.
struct KernelGenerator {
  std::vector<std::int64_t> generator;
  int log_order = 0;
};

// Solutions of A x = 0 over Z/p^m as an internal direct sum of cyclic
// subgroups, computed by Smith-style elimination with tracked column
// operations. Every solution is uniquely a sum c_i g_i with 0 <= c_i < order_i.
std::vector<KernelGenerator> kernel_mod_prime_power(ModMatrix a, int p, int m);

}  // namespace gowers

#endif  // GOWERS_MODULAR_H_
