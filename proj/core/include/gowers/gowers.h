#ifndef GOWERS_GOWERS_H_
#define GOWERS_GOWERS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gowers/compute.h"
#include "gowers/cube.h"
#include "gowers/finite_system.h"
#include "gowers/function_space.h"

namespace gowers {

// Imaginary parts of norm sums below this are dropped silently.
inline constexpr double kImaginaryDiscard = 1e-10;
// Between the two thresholds a warning is attached; above, it is an error.
inline constexpr double kImaginaryError = 1e-6;
inline constexpr double kNegativePowerError = 1e-10;
inline constexpr double kMethodAgreement = 1e-8;

enum class NormMethod { kDirect, kRecursive, kFourier, kCube };

std::string_view method_name(NormMethod method);

struct NormReport {
  int k = 0;
  // ||f||_{U^k}.
  double value = 0;
  // ||f||_{U^k}^{2^k}, before taking the root.
  double power = 0;
  NormMethod method = NormMethod::kDirect;
  std::uint64_t term_count = 0;
  std::string warning;
};

// E_{x,h_1..h_k} Δ_{h_k}...Δ_{h_1} f(x); p^{n(k+1)} terms.
NormReport gowers_norm_direct(const GroupFunction& f, int k,
                              const ComputeOptions& options = {});
// E_{h_1..h_{k-1}} |E_x Δ_{h_{k-1}}...Δ_{h_1} f(x)|^2; p^{nk} terms.
NormReport gowers_norm_recursive(const GroupFunction& f, int k,
                                 const ComputeOptions& options = {});
// Iterated derivatives over (k-2)-tuples, each leaf finished with
// sum_ξ |g^(ξ)|^4. Requires k >= 2.
NormReport gowers_norm_fast(const GroupFunction& f, int k,
                            const ComputeOptions& options = {});
// The cheapest exact path for the given order.
NormReport gowers_norm(const GroupFunction& f, int k,
                       const ComputeOptions& options = {});

// Applies the residue rules to a raw complex norm power and takes the root.
NormReport finalize_norm(Complex power, int k, NormMethod method,
                         std::uint64_t terms);

// ||f||_{U^k(X)} on a finite system. Computes the iterated average
// E_{h_1..h_k} ∫ Δ_{h_k}...Δ_{h_1} f dμ and the cube integral ∫ d^[k] f dμ^[k];
// returns the latter and throws InternalConsistencyError if they differ by
// more than 1e-8.
NormReport ghk_seminorm(const FiniteSystem& system, std::span<const Complex> f,
                        int k, const ComputeOptions& options = {});

// Π_ω f(x_ω)^{sgn ω} at one point of X^(2^k) (vertex order as in
// CubeVertexSet). Negative exponents use the conjugate for unit-modulus
// values and the reciprocal otherwise; throws SingularityError if |f| is
// below `tolerance` where a reciprocal is needed.
Complex d_k_eval(std::span<const Complex> f, std::span<const std::uint32_t> cube,
                 double tolerance = kDefaultTolerance);
Complex d_k_eval(const GroupFunction& f, std::span<const std::uint32_t> cube);

// Dual function with <f, D_k f> = ||f||_{U^k}^{2^k}:
// D_k f(x) = E_{h_1..h_k} Π_{ω ∈ {0,1}^k, ω ≠ 0} C^{|ω|-1} f(x + ω·h),
// evaluated by D_0 f = 1, D_k f = E_h T_h f · D_{k-1}(conj Δ_h f).
GroupFunction dual_function(const GroupFunction& f, int k,
                            const ComputeOptions& options = {});

// Exact dual of e(P/p^m): the exponent of D_k e(P) when every term of the
// average above is the same root of unity, nullopt otherwise.
std::optional<ExponentFunction> dual_phase(const ExponentFunction& P, int k,
                                           const ComputeOptions& options = {});

// ∫ Π_ω C^{[sgn ω = -1]} f_ω dμ^[k] over the translation system, for a
// tuple of 2^k functions in vertex order.
Complex gowers_inner_product(std::span<const GroupFunction> tuple,
                             const ComputeOptions& options = {});

}  // namespace gowers

#endif  // GOWERS_GOWERS_H_
