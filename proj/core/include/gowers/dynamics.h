#ifndef GOWERS_DYNAMICS_H_
#define GOWERS_DYNAMICS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gowers/compute.h"
#include "gowers/cube.h"
#include "gowers/finite_system.h"
#include "gowers/phase_poly.h"

namespace gowers {

// First (g, g', x) in lexicographic order with
// ρ(g + g', x) != ρ(g, T_{g'} x) + ρ(g', x), if any.
struct CocycleCheck {
  bool ok = true;
  std::size_t g = 0;
  std::size_t g2 = 0;
  std::size_t x = 0;
};

CocycleCheck is_cocycle(const FiniteSystem& system, const CocycleTable& rho,
                        const ComputeOptions& options = {});

// X x_ρ (Z/p^m)^L with (x, u) -> (T_g x, u + ρ(g, x)) and product measure.
// Throws ContractError naming the failing triple if ρ is not a cocycle.
FiniteSystem extend(const FiniteSystem& base, const CocycleTable& rho,
                    const ComputeOptions& options = {});

// Permutation (x, u) -> (x, u + t) of an extension; t indexes the fiber group.
std::vector<std::uint32_t> fiber_translation(const FiniteSystem& extension, std::size_t t);

// One step of an obstruction cycle: from --g--> to when forward, otherwise
// the edge is traversed against the action.
struct CycleEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  std::size_t g = 0;
  bool forward = true;
};

struct Obstruction {
  std::vector<CycleEdge> cycle;
  // Sum of ρ around the cycle (nonzero in some coordinate).
  std::vector<std::int64_t> holonomy;
};

struct CoboundaryWitness {
  // F with ρ(g, x) = F(T_g x) - F(x); entry [x * L + l].
  std::vector<std::int64_t> potential;
  // One basepoint per orbit (its least point), where F = 0.
  std::vector<std::size_t> basepoints;
};

struct CoboundaryResult {
  std::optional<CoboundaryWitness> witness;
  std::optional<Obstruction> obstruction;

  bool solved() const { return witness.has_value(); }
};

// Propagates F along a breadth-first spanning tree of each orbit (generator
// edges, basepoint = least id) and verifies every (g, x). On failure returns
// the cycle made of the two tree paths and the failing edge.
CoboundaryResult find_antiderivative(const FiniteSystem& system, const CocycleTable& rho,
                                     const ComputeOptions& options = {});

// find_antiderivative after checking that ρ is a cocycle (ContractError otherwise).
CoboundaryResult solve_coboundary(const FiniteSystem& system, const CocycleTable& rho,
                                  const ComputeOptions& options = {});

// d^[k] f on the cube system: (g, (x_ω)) -> Σ_ω sgn(ω) f(g, x_ω).
CocycleTable cube_lift(const FiniteSystem& system, const CubeMeasure& cubes,
                       const CocycleTable& f);

struct TypeTestResult {
  bool passed = false;
  std::size_t cube_points = 0;
  CoboundaryResult detail;
};

// Whether d^[k] f is a coboundary on the level-k cube system.
TypeTestResult type_test(const FiniteSystem& system, const CocycleTable& f, int k,
                         const ComputeOptions& options = {});

// x -> e(exponents[x] / p^m) on the points of a system.
struct SystemPhase {
  std::vector<std::int64_t> exponents;
  int m = 1;
};

// Degree of a phase on a system under the generator derivatives
// Δ_i f = f∘T_{e_i} / f (same conventions as degree_test on F_p^n).
DegreeCertificate system_degree(const FiniteSystem& system, const SystemPhase& f, int k_max);

struct VerticalDerivative {
  SystemPhase derivative;
  std::optional<int> input_degree;
  std::optional<int> output_degree;
};

// Δ_t f = f∘V_t / f, with degrees measured up to k_max. Throws DomainError
// if the system has no fiber or t is outside it; if `bound` is given, throws
// InternalConsistencyError unless the derivative has degree < bound.
VerticalDerivative vertical_derivative(const FiniteSystem& extension, const SystemPhase& f,
                                       std::size_t t, int k_max,
                                       std::optional<int> bound = std::nullopt);

struct CocycleTorsionAudit {
  int k = 0;
  // floor(k/p) + 1.
  int asserted_torsion = 0;
  // Largest minimal torsion among the values ρ(g, x).
  int measured_torsion = 0;
  bool ok = false;
  // First (g, x) whose value leaves C_{p^asserted_torsion}.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

// For a C_{p^m}-valued cocycle (L = 1) with every ρ(g, .) in Phase_{<k}:
// whether all values lie in C_{p^{floor(k/p)+1}}. Throws ContractError if
// ρ is not a cocycle or some ρ(g, .) has degree >= k.
CocycleTorsionAudit cocycle_torsion_audit(const FiniteSystem& system, const CocycleTable& rho,
                                          int k, const ComputeOptions& options = {});

// (x, u) -> e(u_l / p^m): the l-th vertical character of an extension.
SystemPhase vertical_character(const FiniteSystem& extension, int l = 0);

}  // namespace gowers

#endif  // GOWERS_DYNAMICS_H_
