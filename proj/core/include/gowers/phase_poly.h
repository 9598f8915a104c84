#ifndef GOWERS_PHASE_POLY_H_
#define GOWERS_PHASE_POLY_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gowers/compute.h"
#include "gowers/function_space.h"
#include "gowers/interpolation.h"
#include "gowers/modular.h"

namespace gowers {

// e(P / p^m) together with a degree bound: the phase lies in Phase_{<degree_bound}.
// `certified` means the bound was established by an exhaustive derivative
// check rather than assumed.
struct PhasePolynomial {
  ExponentFunction exponent;
  int degree_bound = 0;
  bool certified = false;

  GroupFunction to_function() const { return exponent.to_function(); }
};

// Degree d means the phase lies in Phase_{<d+1} but not Phase_{<d};
// constants have degree 0.
struct DegreeCertificate {
  std::optional<int> degree;
  int k_max = 0;
  std::uint64_t derivatives_checked = 0;

  // Phase_{<k} membership (false when the degree was not found).
  bool below(int k) const { return degree && *degree < k; }
};

// Least degree d <= k_max such that every (d+1)-fold multiplicative
// derivative along basis directions is identically 1. Only nondecreasing
// direction multisets are visited and subtrees below a vanishing derivative
// are skipped. Throws DomainError unless |phi| = 1 within 1e-10.
DegreeCertificate degree_test(const GroupFunction& phi, int k_max);
// Exact version on exponents.
DegreeCertificate degree_test(const ExponentFunction& P, int k_max);
// Exact degree of x -> e(exponents[x] / q) under commuting permutations,
// with derivatives taken along x -> shifts[i][x].
DegreeCertificate degree_test(const std::vector<std::vector<std::uint32_t>>& shifts,
                              const std::vector<std::int64_t>& exponents,
                              std::int64_t q, int k_max);

// A degree bound valid for every Z/p^m-valued function on F_p^n.
int universal_degree_bound(int p, int n, int m);

// Measures the exact degree and returns the certified phase.
PhasePolynomial certify(ExponentFunction P);

// x -> e(Σ_j x_j / 2^k) on F_2^n, exponents at m = k.
PhasePolynomial standard_phase(int p, int n, int k);

// floor((k-2)/(p-1)) + 1 (floor division), clamped at 0: after rotation by a
// constant, phases of degree < k take values in C_{p^t}.
int values_torsion_bound(int p, int k);
// floor(k/p) + 1: polynomial cocycles of degree < k take values in this torsion.
int cocycle_torsion_bound(int p, int k);

// j-th base-p digit of value (value taken in [0, p^m)).
std::int64_t base_digit(std::int64_t value, int p, int j);

struct DigitResult {
  ExponentFunction digit;
  std::optional<int> measured_degree;
};

// x -> b_j(P(x)) embedded in Z/p^l, with its measured degree.
DigitResult digit(const ExponentFunction& P, int j, int l);

struct CarryTable {
  int p = 2;
  int j = 1;
  int l = 1;
  // c_j on {0..p-1}^(2j); arguments are a_0..a_{j-1}, b_0..b_{j-1}.
  std::vector<std::int64_t> table;
  RingPolynomial interpolant;
};

// The carry into digit j when adding two numbers given by their low j
// digits: [Σ_{i<j} (a_i + b_i) p^i >= p^j], as a polynomial over Z/p^l.
CarryTable carry_polynomial(int p, int j, int l, const ComputeOptions& options = {});

// ψ with ψ^r = φ. For r = p^a s with gcd(s, p) = 1 the exponent is
// multiplied by s^{-1} mod p^m and then lifted to torsion m + a by its base-p
// digits. The returned degree is measured.
PhasePolynomial root(const PhasePolynomial& phi, std::int64_t r);
// ψ^r = φ with exact exponent arithmetic at a common torsion.
bool is_root(const PhasePolynomial& psi, const PhasePolynomial& phi, std::int64_t r);

using ExponentMap = std::function<std::int64_t(std::span<const std::int64_t>)>;

// x -> F(P_1(x), ..., P_M(x)) as a phase at torsion target_m; F receives the
// exponents in [0, p^{m_i}) and must return a value in [0, p^target_m)
// (DomainError otherwise). The degree of the result is measured.
PhasePolynomial compose(const ExponentMap& F, std::span<const PhasePolynomial> phis,
                        int target_m);

// x -> F(d_1(x), ..., d_M(x)) mod p^l for C_p-valued inputs (m = 1).
ExponentFunction compose_by_interpolation(const RingPolynomial& F,
                                          std::span<const ExponentFunction> digits);

// The C_p-valued digit phases b_0(P), ..., b_{m-1}(P).
std::vector<ExponentFunction> digit_phases(const ExponentFunction& P);
// Rebuilds P from its digit phases through the interpolated map
// (d_0, ..., d_{m-1}) -> Σ d_i p^i.
ExponentFunction phaserep(const ExponentFunction& P);

// Position where the line product Π_{i<p} T_g^i φ left the asserted group.
struct LineFailure {
  std::size_t g = 0;
  std::size_t x = 0;
  // Minimal torsion of the offending value.
  int torsion = 0;
};

// Value and line checks for φ in Phase_{<k}. Nothing is thrown on a failed
// check; each verdict is recorded.
struct TorsionAudit {
  int k = 0;
  // P(0), the rotation removed before the value checks.
  std::int64_t rotation = 0;
  // The rotated phase Q takes values in C_{p^asserted_torsion}.
  int asserted_torsion = 0;
  int minimal_torsion = 0;
  bool values_ok = false;
  // Π_{i<p} T_g^i Q lies in C_{p^line_torsion} for every g (line_torsion =
  // floor(k/p)). Only checked when values_ok.
  int line_torsion = 0;
  std::uint64_t lines_checked = 0;
  bool line_ok = false;
  std::optional<LineFailure> line_failure;
  // The same after dividing each line product by its value at x = 0.
  bool line_up_to_constant_ok = false;
  // When k >= p: φ^p lies in Phase_{<k-p+1}. Vacuously true otherwise.
  std::optional<int> power_degree;
  bool power_ok = false;

  bool passed() const { return values_ok && line_ok && power_ok; }
};

// Throws ContractError unless φ is in Phase_{<k}.
TorsionAudit torsion_audit(const PhasePolynomial& phi, int k);

// The group of exponent tables P: F_p^n -> Z/p^m whose k-fold basis
// differences vanish, optionally modulo constants (P(0) = 0).
class PhasePolynomialFamily {
 public:
  PhasePolynomialFamily(int p, int n, int k, int m, bool quotient_constants);

  const Space& space() const { return space_; }
  int k() const { return k_; }
  int m() const { return m_; }
  bool quotient_constants() const { return quotient_constants_; }
  const std::vector<KernelGenerator>& generators() const { return generators_; }
  // log_p of the number of members.
  int log_count() const { return log_count_; }
  // Number of members; throws CapacityError if it does not fit 64 bits.
  std::uint64_t count() const;
  // Member with mixed-radix coefficient digits taken from idx.
  ExponentFunction member(std::uint64_t idx) const;
  PhasePolynomial phase(std::uint64_t idx) const;
  // Generator i as a member (a single cyclic summand).
  ExponentFunction generator(std::size_t i) const;

 private:
  Space space_;
  int k_;
  int m_;
  bool quotient_constants_;
  std::vector<KernelGenerator> generators_;
  int log_count_ = 0;
};

// All members of the family with constants (no duplicates, index order).
std::vector<PhasePolynomial> enumerate_phase_polys(int p, int n, int k, int m,
                                                   const ComputeOptions& options = {});

struct CorrelationResult {
  PhasePolynomial witness;
  std::uint64_t witness_index = 0;
  // |E_x f(x) conj(φ(x))|.
  double correlation = 0;
  Complex raw = 0;
  std::uint64_t searched_count = 0;
  int m = 1;
};

struct InverseSearchOptions {
  // Permit k > p, where the correlation statement is not known to hold.
  bool allow_low_characteristic = false;
};

// Torsion used by the search: max(1, values_torsion_bound(p, k)).
int inverse_search_torsion(int p, int k);

// Maximizes |<f, φ>| over Phase_{<k} modulo constants; ties go to the lower
// member index. Throws UnsupportedHypothesisError for k > p unless allowed.
CorrelationResult inverse_search(const GroupFunction& f, int k,
                                 const ComputeOptions& options = {},
                                 const InverseSearchOptions& search = {});

}  // namespace gowers

#endif  // GOWERS_PHASE_POLY_H_
