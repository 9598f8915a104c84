#include "gowers/modular.h"

#include <utility>

#include "gowers/error.h"
#include "gowers/group.h"

namespace gowers {
namespace {

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t q) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % q);
}

}  // namespace

std::vector<KernelGenerator> kernel_mod_prime_power(ModMatrix a, int p, int m) {
  const std::int64_t q = checked_pow(p, m);
  for (auto& e : a.entries) e = mod(e, q);
  const std::size_t rows = a.rows;
  const std::size_t cols = a.cols;

  // Column operations are mirrored on v (cols x cols, starts as identity).
  ModMatrix v(cols, cols);
  for (std::size_t i = 0; i < cols; ++i) v.at(i, i) = 1;

  std::vector<int> pivot_valuation;
  std::size_t t = 0;
  for (; t < rows && t < cols; ++t) {
    int best = m;
    std::size_t br = 0, bc = 0;
    for (std::size_t r = t; r < rows && best > 0; ++r) {
      for (std::size_t c = t; c < cols; ++c) {
        const std::int64_t e = a.at(r, c);
        if (e == 0) continue;
        const int val = valuation(e, p);
        if (val < best) {
          best = val;
          br = r;
          bc = c;
          if (val == 0) break;
        }
      }
    }
    if (best == m) break;
    if (br != t) {
      for (std::size_t c = 0; c < cols; ++c) std::swap(a.at(br, c), a.at(t, c));
    }
    if (bc != t) {
      for (std::size_t r = 0; r < rows; ++r) std::swap(a.at(r, bc), a.at(r, t));
      for (std::size_t r = 0; r < cols; ++r) std::swap(v.at(r, bc), v.at(r, t));
    }
    const std::int64_t pv = checked_pow(p, best);
    // Normalize the pivot to exactly p^best.
    const std::int64_t unit = inverse_mod(a.at(t, t) / pv, q);
    for (std::size_t c = t; c < cols; ++c) a.at(t, c) = mul_mod(a.at(t, c), unit, q);
    // Clear column t below the pivot.
    for (std::size_t r = t + 1; r < rows; ++r) {
      const std::int64_t e = a.at(r, t);
      if (e == 0) continue;
      const std::int64_t factor = e / pv;
      for (std::size_t c = t; c < cols; ++c) {
        a.at(r, c) = mod(a.at(r, c) - mul_mod(factor, a.at(t, c), q), q);
      }
    }
    // Clear row t right of the pivot; only row t is nonzero in column t now.
    for (std::size_t c = t + 1; c < cols; ++c) {
      const std::int64_t e = a.at(t, c);
      if (e == 0) continue;
      const std::int64_t factor = e / pv;
      a.at(t, c) = 0;
      for (std::size_t r = 0; r < cols; ++r) {
        v.at(r, c) = mod(v.at(r, c) - mul_mod(factor, v.at(r, t), q), q);
      }
    }
    pivot_valuation.push_back(best);
  }

  std::vector<KernelGenerator> out;
  for (std::size_t c = 0; c < cols; ++c) {
    const int val = c < pivot_valuation.size() ? pivot_valuation[c] : m;
    if (val == 0) continue;
    const std::int64_t scale = checked_pow(p, m - val);
    KernelGenerator g;
    g.log_order = val;
    g.generator.resize(cols);
    for (std::size_t r = 0; r < cols; ++r) g.generator[r] = mul_mod(v.at(r, c), scale, q);
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace gowers
