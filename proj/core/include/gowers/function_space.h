#ifndef GOWERS_FUNCTION_SPACE_H_
#define GOWERS_FUNCTION_SPACE_H_

#include <cstdint>
#include <vector>

#include "gowers/compute.h"
#include "gowers/group.h"

namespace gowers {

inline constexpr double kDefaultTolerance = 1e-9;

// Dense table F_p^n -> C indexed by point index.
class GroupFunction {
 public:
  GroupFunction(Space space, std::vector<Complex> values,
                double tolerance = kDefaultTolerance);

  static GroupFunction constant(const Space& space, Complex c);
  // x -> e(ξ·x / p).
  static GroupFunction character(const Space& space, std::size_t xi);

  const Space& space() const { return space_; }
  const std::vector<Complex>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double tolerance() const { return tolerance_; }
  Complex operator[](std::size_t x) const { return values_[x]; }

  // max_x ||f(x)| - 1|.
  double unit_deviation() const;
  bool is_unit_modulus(double tol) const { return unit_deviation() <= tol; }
  double sup_norm() const;

  GroupFunction conj() const;
  // x -> f(x + h).
  GroupFunction translate(std::size_t h) const;
  GroupFunction scaled(Complex c) const;
  GroupFunction operator*(const GroupFunction& other) const;
  GroupFunction operator+(const GroupFunction& other) const;

 private:
  Space space_;
  std::vector<Complex> values_;
  double tolerance_;
};

// Exact exponent table P: F_p^n -> Z/p^m, representing e(P / p^m).
class ExponentFunction {
 public:
  ExponentFunction(Space space, int m, std::vector<std::int64_t> exponents);

  static ExponentFunction zero(const Space& space, int m);

  const Space& space() const { return space_; }
  int m() const { return m_; }
  std::int64_t modulus() const { return modulus_; }
  const std::vector<std::int64_t>& exponents() const { return exponents_; }
  std::int64_t operator[](std::size_t x) const { return exponents_[x]; }
  std::size_t size() const { return exponents_.size(); }

  GroupFunction to_function() const;
  ExponentFunction operator+(const ExponentFunction& other) const;
  ExponentFunction operator-(const ExponentFunction& other) const;
  ExponentFunction negated() const;
  ExponentFunction times(std::int64_t c) const;
  ExponentFunction plus_constant(std::int64_t c) const;
  ExponentFunction translate(std::size_t h) const;
  // Same phases in Z/p^(m+a): multiplies exponents by p^a.
  ExponentFunction lift(int a) const;
  bool is_zero() const;
  // Smallest m' such that all values lie in p^(m-m') Z/p^m.
  int torsion() const;

  friend bool operator==(const ExponentFunction&, const ExponentFunction&) = default;

 private:
  Space space_;
  int m_;
  std::int64_t modulus_;
  std::vector<std::int64_t> exponents_;
};

struct Spectrum {
  Space space;
  std::vector<Complex> coefficients;
};

// conj(f(x)) f(x+h).
GroupFunction mult_derivative(const GroupFunction& f, std::size_t h);
// P(x+h) - P(x) mod p^m.
ExponentFunction add_derivative(const ExponentFunction& P, std::size_t h);

// f^(ξ) = E_x f(x) conj(e(ξ·x/p)), by axis-wise size-p DFTs (Walsh-Hadamard
// butterflies when p = 2).
Spectrum fourier_transform(const GroupFunction& f);
GroupFunction inverse_fourier_transform(const Spectrum& spectrum);

// E_x f(x) conj(g(x)).
Complex inner_product(const GroupFunction& f, const GroupFunction& g);
Complex mean(const GroupFunction& f);

}  // namespace gowers

#endif  // GOWERS_FUNCTION_SPACE_H_
