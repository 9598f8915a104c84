#include "gowers/group.h"

#include <cmath>
#include <numbers>
#include <numeric>

#include "gowers/error.h"

namespace gowers {

bool is_prime(std::int64_t value) {
  if (value < 2) return false;
  for (std::int64_t d = 2; d * d <= value; ++d) {
    if (value % d == 0) return false;
  }
  return true;
}

std::int64_t checked_pow(std::int64_t base, int exponent) {
  std::int64_t result = 1;
  for (int i = 0; i < exponent; ++i) {
    if (base != 0 && result > INT64_MAX / base) {
      throw CapacityError("integer power " + std::to_string(base) + "^" +
                          std::to_string(exponent) + " overflows");
    }
    result *= base;
  }
  return result;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t modulus) {
  std::int64_t old_r = mod(a, modulus), r = modulus;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) {
    throw SingularityError(std::to_string(a) + " is not invertible modulo " +
                           std::to_string(modulus));
  }
  return mod(old_s, modulus);
}

int valuation(std::int64_t a, int p) {
  if (a == 0) throw DomainError("valuation of zero");
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

PrimeField::PrimeField(int p) : p_(p) {
  if (!is_prime(p)) {
    throw DomainError("characteristic " + std::to_string(p) + " is not prime");
  }
}

int PrimeField::inverse(int a) const {
  return static_cast<int>(inverse_mod(a, p_));
}

Space::Space(int p, int n) : p_(PrimeField(p).p()), n_(n), size_(1) {
  if (n < 0) throw DomainError("negative dimension");
  strides_.reserve(n);
  for (int i = 0; i < n; ++i) {
    strides_.push_back(size_);
    if (size_ > kMaxSpaceSize / static_cast<std::size_t>(p)) {
      throw CapacityError("F_" + std::to_string(p) + "^" + std::to_string(n) +
                          " exceeds the table size limit");
    }
    size_ *= p;
  }
}

int Space::coord(std::size_t index, int i) const {
  return static_cast<int>((index / strides_[i]) % p_);
}

std::vector<int> Space::coords(std::size_t index) const {
  std::vector<int> out(n_);
  for (int i = 0; i < n_; ++i) {
    out[i] = static_cast<int>(index % p_);
    index /= p_;
  }
  return out;
}

std::size_t Space::index(std::span<const int> coords) const {
  if (static_cast<int>(coords.size()) != n_) {
    throw DimensionError("expected " + std::to_string(n_) + " coordinates");
  }
  std::size_t idx = 0;
  for (int i = n_ - 1; i >= 0; --i) {
    if (coords[i] < 0 || coords[i] >= p_) {
      throw DomainError("coordinate out of range [0, p)");
    }
    idx = idx * p_ + coords[i];
  }
  return idx;
}

std::size_t Space::add(std::size_t a, std::size_t b) const {
  if (p_ == 2) return a ^ b;
  std::size_t out = 0;
  for (int i = 0; i < n_; ++i) {
    std::size_t d = a % p_ + b % p_;
    if (d >= static_cast<std::size_t>(p_)) d -= p_;
    out += d * strides_[i];
    a /= p_;
    b /= p_;
  }
  return out;
}

std::size_t Space::neg(std::size_t a) const {
  if (p_ == 2) return a;
  std::size_t out = 0;
  for (int i = 0; i < n_; ++i) {
    const std::size_t d = a % p_;
    if (d != 0) out += (p_ - d) * strides_[i];
    a /= p_;
  }
  return out;
}

std::size_t Space::sub(std::size_t a, std::size_t b) const {
  return add(a, neg(b));
}

std::size_t Space::scale(std::int64_t c, std::size_t a) const {
  const std::int64_t cc = mod(c, p_);
  std::size_t out = 0;
  for (int i = 0; i < n_; ++i) {
    out += static_cast<std::size_t>((cc * static_cast<std::int64_t>(a % p_)) % p_) *
           strides_[i];
    a /= p_;
  }
  return out;
}

int Space::dot(std::size_t a, std::size_t b) const {
  int s = 0;
  for (int i = 0; i < n_; ++i) {
    s += static_cast<int>((a % p_) * (b % p_));
    a /= p_;
    b /= p_;
  }
  return s % p_;
}

std::vector<std::uint32_t> Space::translation(std::size_t h) const {
  std::vector<std::uint32_t> table(size_);
  if (p_ == 2) {
    for (std::size_t x = 0; x < size_; ++x) {
      table[x] = static_cast<std::uint32_t>(x ^ h);
    }
    return table;
  }
  // Odometer walk over x with the digits of x + h maintained incrementally.
  const std::vector<int> hd = coords(h);
  std::vector<int> xd(n_, 0);
  std::size_t y = h;
  for (std::size_t x = 0; x < size_; ++x) {
    table[x] = static_cast<std::uint32_t>(y);
    for (int i = 0; i < n_; ++i) {
      // Advance digit i of x; digit i of y moves in step.
      const int old_y = (xd[i] + hd[i]) % p_;
      ++xd[i];
      if (xd[i] < p_) {
        const int new_y = (xd[i] + hd[i]) % p_;
        y = y - old_y * strides_[i] + new_y * strides_[i];
        break;
      }
      xd[i] = 0;
      y = y - old_y * strides_[i] + hd[i] * strides_[i];
    }
  }
  return table;
}

void Space::require_same(const Space& other, const char* what) const {
  if (!(*this == other)) {
    throw DimensionError(std::string(what) + ": ambient " + describe() +
                         " vs " + other.describe());
  }
}

std::string Space::describe() const {
  return "F_" + std::to_string(p_) + "^" + std::to_string(n_);
}

GroupPoint GroupPoint::from_index(const Space& space, std::size_t index) {
  if (index >= space.size()) throw DomainError("point index out of range");
  return GroupPoint{space.p(), space.coords(index), index};
}

GroupPoint GroupPoint::from_coords(const Space& space, std::vector<int> coords) {
  const std::size_t idx = space.index(coords);
  return GroupPoint{space.p(), std::move(coords), idx};
}

std::vector<GroupPoint> enumerate_group(int p, int n) {
  const Space space(p, n);
  std::vector<GroupPoint> out;
  out.reserve(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    out.push_back(GroupPoint::from_index(space, i));
  }
  return out;
}

GroupPoint add(const GroupPoint& a, const GroupPoint& b) {
  const Space space = a.space();
  space.require_same(b.space(), "add");
  return GroupPoint::from_index(space, space.add(a.index, b.index));
}

GroupPoint neg(const GroupPoint& a) {
  const Space space = a.space();
  return GroupPoint::from_index(space, space.neg(a.index));
}

CyclicValue::CyclicValue(std::int64_t exponent, int p, int m)
    : p_(PrimeField(p).p()), m_(m), modulus_(checked_pow(p, m)) {
  if (m < 0) throw DomainError("negative torsion exponent");
  exponent_ = mod(exponent, modulus_);
}

CyclicValue CyclicValue::operator*(const CyclicValue& other) const {
  if (p_ != other.p_) throw DimensionError("cyclic values over different p");
  if (m_ >= other.m_) return CyclicValue(exponent_ + other.lift(m_ - other.m_).exponent_, p_, m_);
  return other * *this;
}

CyclicValue CyclicValue::conj() const { return CyclicValue(-exponent_, p_, m_); }

CyclicValue CyclicValue::pow(std::int64_t r) const {
  const std::int64_t e =
      static_cast<std::int64_t>((static_cast<__int128>(exponent_) * mod(r, modulus_)) % modulus_);
  return CyclicValue(e, p_, m_);
}

CyclicValue CyclicValue::lift(int a) const {
  if (a < 0) throw DomainError("negative lift");
  return CyclicValue(exponent_ * checked_pow(p_, a), p_, m_ + a);
}

std::int64_t CyclicValue::order() const {
  if (exponent_ == 0) return 1;
  return modulus_ / std::gcd(exponent_, modulus_);
}

Complex CyclicValue::to_complex() const { return root_of_unity(exponent_, modulus_); }

Complex root_of_unity(std::int64_t a, std::int64_t q) {
  a = mod(a, q);
  if (a == 0) return {1.0, 0.0};
  // Quarter turns are returned exactly.
  if ((4 * a) % q == 0) {
    switch ((4 * a) / q) {
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, -1.0};
      default: break;
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(a) /
                       static_cast<double>(q);
  return {std::cos(angle), std::sin(angle)};
}

CyclicValue character_eval(const Character& chi, const GroupPoint& x) {
  const Space space = chi.frequency.space();
  space.require_same(x.space(), "character_eval");
  return CyclicValue(space.dot(chi.frequency.index, x.index), space.p(), 1);
}

}  // namespace gowers
