#include "gowers/interpolation.h"

#include <algorithm>

#include "gowers/error.h"
#include "gowers/group.h"

namespace gowers {
namespace {

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t q) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % q);
}

// basis[a][e] = coefficient of x^e in the Lagrange polynomial that is 1 at a
// and 0 at the other points of {0..p-1}, over Z/q.
std::vector<std::vector<std::int64_t>> lagrange_basis(int p, std::int64_t q) {
  std::vector<std::vector<std::int64_t>> basis(p);
  for (int a = 0; a < p; ++a) {
    std::vector<std::int64_t> num{1};
    std::int64_t denom = 1;
    for (int b = 0; b < p; ++b) {
      if (b == a) continue;
      // num *= (x - b)
      std::vector<std::int64_t> next(num.size() + 1, 0);
      for (std::size_t e = 0; e < num.size(); ++e) {
        next[e + 1] = mod(next[e + 1] + num[e], q);
        next[e] = mod(next[e] - mul_mod(num[e], b, q), q);
      }
      num.swap(next);
      denom = mod(denom * (a - b), q);
    }
    if (denom % p == 0) {
      throw InternalConsistencyError("Lagrange denominator divisible by p");
    }
    const std::int64_t inv = inverse_mod(denom, q);
    for (auto& c : num) c = mul_mod(c, inv, q);
    basis[a] = std::move(num);
  }
  return basis;
}

}  // namespace

RingPolynomial::RingPolynomial(int p, int l, int arity,
                               std::vector<std::int64_t> coefficients)
    : p_(PrimeField(p).p()),
      l_(l),
      arity_(arity),
      modulus_(checked_pow(p, l)),
      coefficients_(std::move(coefficients)) {
  if (static_cast<std::int64_t>(coefficients_.size()) != checked_pow(p, arity)) {
    throw DimensionError("coefficient table must have p^arity entries");
  }
  for (auto& c : coefficients_) c = mod(c, modulus_);
}

RingPolynomial RingPolynomial::interpolate(int p, int l, int arity,
                                           std::span<const std::int64_t> values) {
  const std::int64_t q = checked_pow(p, l);
  const std::int64_t size = checked_pow(p, arity);
  if (static_cast<std::int64_t>(values.size()) != size) {
    throw DimensionError("interpolation grid must have p^arity values");
  }
  const auto basis = lagrange_basis(p, q);
  std::vector<std::int64_t> data(values.begin(), values.end());
  for (auto& v : data) v = mod(v, q);
  // Replace each axis of grid values by coefficients, one axis at a time.
  std::int64_t stride = 1;
  std::vector<std::int64_t> line(p), out(p);
  for (int axis = 0; axis < arity; ++axis) {
    const std::int64_t block = stride * p;
    for (std::int64_t base = 0; base < size; base += block) {
      for (std::int64_t offset = 0; offset < stride; ++offset) {
        for (int a = 0; a < p; ++a) line[a] = data[base + offset + a * stride];
        std::fill(out.begin(), out.end(), 0);
        for (int a = 0; a < p; ++a) {
          for (int e = 0; e < p; ++e) out[e] = mod(out[e] + mul_mod(line[a], basis[a][e], q), q);
        }
        for (int e = 0; e < p; ++e) data[base + offset + e * stride] = out[e];
      }
    }
    stride = block;
  }
  return RingPolynomial(p, l, arity, std::move(data));
}

std::int64_t RingPolynomial::evaluate(std::span<const std::int64_t> args) const {
  if (static_cast<int>(args.size()) != arity_) {
    throw DimensionError("wrong number of polynomial arguments");
  }
  // powers[i][e] = args[i]^e.
  std::vector<std::vector<std::int64_t>> powers(arity_, std::vector<std::int64_t>(p_));
  for (int i = 0; i < arity_; ++i) {
    powers[i][0] = 1;
    const std::int64_t x = mod(args[i], modulus_);
    for (int e = 1; e < p_; ++e) powers[i][e] = mul_mod(powers[i][e - 1], x, modulus_);
  }
  std::int64_t acc = 0;
  for (std::size_t idx = 0; idx < coefficients_.size(); ++idx) {
    std::int64_t term = coefficients_[idx];
    if (term == 0) continue;
    std::size_t rest = idx;
    for (int i = 0; i < arity_ && term != 0; ++i) {
      term = mul_mod(term, powers[i][rest % p_], modulus_);
      rest /= p_;
    }
    acc = mod(acc + term, modulus_);
  }
  return acc;
}

int RingPolynomial::total_degree() const {
  int best = -1;
  for (std::size_t idx = 0; idx < coefficients_.size(); ++idx) {
    if (coefficients_[idx] == 0) continue;
    int deg = 0;
    std::size_t rest = idx;
    for (int i = 0; i < arity_; ++i) {
      deg += static_cast<int>(rest % p_);
      rest /= p_;
    }
    best = std::max(best, deg);
  }
  return best;
}

std::string RingPolynomial::to_string() const {
  std::string out;
  for (std::size_t idx = 0; idx < coefficients_.size(); ++idx) {
    if (coefficients_[idx] == 0) continue;
    if (!out.empty()) out += " + ";
    out += std::to_string(coefficients_[idx]);
    std::size_t rest = idx;
    for (int i = 0; i < arity_; ++i) {
      const int e = static_cast<int>(rest % p_);
      rest /= p_;
      if (e == 0) continue;
      out += "*x" + std::to_string(i);
      if (e > 1) out += "^" + std::to_string(e);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace gowers
