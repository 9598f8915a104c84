#ifndef GOWERS_GROUP_H_
#define GOWERS_GROUP_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gowers/compute.h"

namespace gowers {

// Largest table size any Space may have (2^26 points).
inline constexpr std::size_t kMaxSpaceSize = std::size_t{1} << 26;

bool is_prime(std::int64_t value);

// Integer power with overflow check; throws CapacityError on overflow.
std::int64_t checked_pow(std::int64_t base, int exponent);

// Reduces a into [0, modulus).
inline std::int64_t mod(std::int64_t a, std::int64_t modulus) {
  const std::int64_t r = a % modulus;
  return r < 0 ? r + modulus : r;
}

// Inverse of a modulo `modulus`; throws SingularityError if gcd(a, modulus) > 1.
std::int64_t inverse_mod(std::int64_t a, std::int64_t modulus);

// p-adic valuation of a nonzero integer.
int valuation(std::int64_t a, int p);

class PrimeField {
 public:
  explicit PrimeField(int p);

  int p() const { return p_; }
  int inverse(int a) const;

 private:
  int p_;
};

// The group F_p^n with points encoded as integers in [0, p^n). Coordinate i
// is the i-th base-p digit of the index.
class Space {
 public:
  Space(int p, int n);

  int p() const { return p_; }
  int n() const { return n_; }
  std::size_t size() const { return size_; }

  int coord(std::size_t index, int i) const;
  std::vector<int> coords(std::size_t index) const;
  std::size_t index(std::span<const int> coords) const;

  std::size_t add(std::size_t a, std::size_t b) const;
  std::size_t sub(std::size_t a, std::size_t b) const;
  std::size_t neg(std::size_t a) const;
  std::size_t scale(std::int64_t c, std::size_t a) const;
  // ξ·x mod p.
  int dot(std::size_t a, std::size_t b) const;
  // Index of the i-th standard basis vector.
  std::size_t basis(int i) const { return strides_[i]; }

  // Table t with t[x] = x + h.
  std::vector<std::uint32_t> translation(std::size_t h) const;

  // Throws DimensionError unless both spaces are equal.
  void require_same(const Space& other, const char* what) const;

  friend bool operator==(const Space& a, const Space& b) {
    return a.p_ == b.p_ && a.n_ == b.n_;
  }

  std::string describe() const;

 private:
  int p_;
  int n_;
  std::size_t size_;
  std::vector<std::size_t> strides_;
};

struct GroupPoint {
  int p = 2;
  std::vector<int> coords;
  std::size_t index = 0;

  static GroupPoint from_index(const Space& space, std::size_t index);
  static GroupPoint from_coords(const Space& space, std::vector<int> coords);
  Space space() const { return Space(p, static_cast<int>(coords.size())); }

  friend bool operator==(const GroupPoint&, const GroupPoint&) = default;
};

// All p^n points in index order.
std::vector<GroupPoint> enumerate_group(int p, int n);

GroupPoint add(const GroupPoint& a, const GroupPoint& b);
GroupPoint neg(const GroupPoint& a);

// e(exponent / p^m).
class CyclicValue {
 public:
  CyclicValue(std::int64_t exponent, int p, int m);

  std::int64_t exponent() const { return exponent_; }
  int p() const { return p_; }
  int m() const { return m_; }
  std::int64_t modulus() const { return modulus_; }

  CyclicValue operator*(const CyclicValue& other) const;
  CyclicValue conj() const;
  CyclicValue pow(std::int64_t r) const;
  // Same root of unity in C_{p^(m+a)}.
  CyclicValue lift(int a) const;
  // Multiplicative order (a power of p).
  std::int64_t order() const;
  Complex to_complex() const;

  friend bool operator==(const CyclicValue&, const CyclicValue&) = default;

 private:
  std::int64_t exponent_;
  int p_;
  int m_;
  std::int64_t modulus_;
};

// e(a / q) computed as a floating point number.
Complex root_of_unity(std::int64_t a, std::int64_t q);

struct Character {
  GroupPoint frequency;
};

CyclicValue character_eval(const Character& chi, const GroupPoint& x);

}  // namespace gowers

#endif  // GOWERS_GROUP_H_
