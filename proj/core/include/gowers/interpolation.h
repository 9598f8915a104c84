#ifndef GOWERS_INTERPOLATION_H_
#define GOWERS_INTERPOLATION_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gowers {

// Polynomial in `arity` variables over Z/p^l with every per-variable
// exponent below p. Coefficients are indexed by the exponent multi-index in
// little-endian base p (the exponent of variable i is digit i).
class RingPolynomial {
 public:
  RingPolynomial(int p, int l, int arity, std::vector<std::int64_t> coefficients);

  // The unique such polynomial agreeing with `values` on the grid
  // {0..p-1}^arity (grid points indexed like the coefficients). Every Lagrange
  // denominator is checked to be a unit mod p; the check throws
  // InternalConsistencyError otherwise.
  static RingPolynomial interpolate(int p, int l, int arity,
                                    std::span<const std::int64_t> values);

  int p() const { return p_; }
  int l() const { return l_; }
  int arity() const { return arity_; }
  std::int64_t modulus() const { return modulus_; }
  const std::vector<std::int64_t>& coefficients() const { return coefficients_; }

  std::int64_t evaluate(std::span<const std::int64_t> args) const;
  // Highest total degree with a nonzero coefficient (-1 for zero).
  int total_degree() const;
  std::string to_string() const;

 private:
  int p_;
  int l_;
  int arity_;
  std::int64_t modulus_;
  std::vector<std::int64_t> coefficients_;
};

}  // namespace gowers

#endif  // GOWERS_INTERPOLATION_H_
