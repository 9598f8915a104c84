#include "gowers/dynamics.h"

#include <algorithm>
#include <deque>
#include <string>

#include "gowers/error.h"

namespace gowers {
namespace {

std::string triple(std::size_t g, std::size_t g2, std::size_t x) {
  return "(g=" + std::to_string(g) + ", g'=" + std::to_string(g2) + ", x=" +
         std::to_string(x) + ")";
}

// Adds fiber element t to u coordinatewise (both little-endian base q).
std::size_t fiber_add(std::size_t u, std::size_t t, std::int64_t q, int L) {
  std::size_t out = 0;
  std::size_t place = 1;
  const auto uq = static_cast<std::size_t>(q);
  for (int l = 0; l < L; ++l) {
    const std::size_t d = (u % uq + t % uq) % uq;
    out += d * place;
    place *= uq;
    u /= uq;
    t /= uq;
  }
  return out;
}

}  // namespace

CocycleCheck is_cocycle(const FiniteSystem& system, const CocycleTable& rho,
                        const ComputeOptions& options) {
  rho.require_compatible(system);
  const Space& G = system.group();
  const std::size_t gs = G.size();
  const std::size_t X = system.size();
  check_budget(saturating_mul(saturating_mul(gs, gs), saturating_mul(X, rho.L())), options,
               "cocycle check");
  const std::int64_t q = rho.modulus();
  for (std::size_t g = 0; g < gs; ++g) {
    for (std::size_t g2 = 0; g2 < gs; ++g2) {
      const std::size_t sum = G.add(g, g2);
      for (std::size_t x = 0; x < X; ++x) {
        const std::size_t y = system.act(g2, x);
        for (int l = 0; l < rho.L(); ++l) {
          if (mod(rho.at(sum, x, l) - rho.at(g, y, l) - rho.at(g2, x, l), q) != 0) {
            return CocycleCheck{false, g, g2, x};
          }
        }
      }
    }
  }
  return CocycleCheck{};
}

FiniteSystem extend(const FiniteSystem& base, const CocycleTable& rho,
                    const ComputeOptions& options) {
  const CocycleCheck check = is_cocycle(base, rho, options);
  if (!check.ok) {
    throw ContractError("not a cocycle at " + triple(check.g, check.g2, check.x));
  }
  const Fiber fiber{base.size(), base.p(), rho.m(), rho.L()};
  const std::size_t U = fiber.fiber_size();
  const std::size_t total = saturating_mul(base.size(), U);
  check_budget(saturating_mul(total, base.group().size()), options, "extension");
  const std::int64_t q = rho.modulus();

  std::vector<double> weights(total);
  for (std::size_t x = 0; x < base.size(); ++x) {
    for (std::size_t u = 0; u < U; ++u) weights[x * U + u] = base.weights()[x] / U;
  }
  std::vector<std::vector<std::uint32_t>> gens;
  for (int i = 0; i < base.n(); ++i) {
    const std::size_t e = base.group().basis(i);
    std::vector<std::uint32_t> perm(total);
    for (std::size_t x = 0; x < base.size(); ++x) {
      std::size_t shift = 0;
      std::size_t place = 1;
      for (int l = 0; l < rho.L(); ++l) {
        shift += static_cast<std::size_t>(mod(rho.at(e, x, l), q)) * place;
        place *= static_cast<std::size_t>(q);
      }
      const std::size_t y = base.act(e, x);
      for (std::size_t u = 0; u < U; ++u) {
        perm[x * U + u] = static_cast<std::uint32_t>(y * U + fiber_add(u, shift, q, rho.L()));
      }
    }
    gens.push_back(std::move(perm));
  }
  return FiniteSystem(base.p(), base.n(), std::move(weights), std::move(gens), fiber);
}

std::vector<std::uint32_t> fiber_translation(const FiniteSystem& extension, std::size_t t) {
  if (!extension.fiber()) throw DomainError("system has no fiber");
  const Fiber& fiber = *extension.fiber();
  const std::size_t U = fiber.fiber_size();
  if (t >= U) throw DomainError("fiber element " + std::to_string(t) + " out of range");
  std::vector<std::uint32_t> perm(extension.size());
  for (std::size_t x = 0; x < fiber.base_points; ++x) {
    for (std::size_t u = 0; u < U; ++u) {
      perm[x * U + u] =
          static_cast<std::uint32_t>(x * U + fiber_add(u, t, fiber.modulus(), fiber.L));
    }
  }
  return perm;
}

CoboundaryResult find_antiderivative(const FiniteSystem& system, const CocycleTable& rho,
                                     const ComputeOptions& options) {
  rho.require_compatible(system);
  const std::size_t X = system.size();
  const int L = rho.L();
  const std::int64_t q = rho.modulus();
  const Space& G = system.group();
  check_budget(saturating_mul(saturating_mul(G.size(), X), L), options, "antiderivative");

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::int64_t> F(X * L, 0);
  std::vector<std::size_t> parent(X, kNone);
  std::vector<std::size_t> parent_gen(X, 0);
  std::vector<std::size_t> depth(X, 0);
  std::vector<bool> seen(X, false);
  std::vector<std::size_t> basepoints;

  for (std::size_t root = 0; root < X; ++root) {
    if (seen[root]) continue;
    basepoints.push_back(root);
    seen[root] = true;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const std::size_t x = queue.front();
      queue.pop_front();
      for (int i = 0; i < system.n(); ++i) {
        const std::size_t y = system.generators()[i][x];
        if (seen[y]) continue;
        seen[y] = true;
        parent[y] = x;
        parent_gen[y] = static_cast<std::size_t>(i);
        depth[y] = depth[x] + 1;
        const std::size_t e = G.basis(i);
        for (int l = 0; l < L; ++l) F[y * L + l] = mod(F[x * L + l] + rho.at(e, x, l), q);
        queue.push_back(y);
      }
    }
  }

  CoboundaryResult result;
  // Generator edges first: a failure there has a cycle in the orbit graph.
  for (int i = 0; i < system.n(); ++i) {
    const std::size_t e = G.basis(i);
    for (std::size_t x = 0; x < X; ++x) {
      const std::size_t y = system.generators()[i][x];
      bool ok = true;
      for (int l = 0; l < L && ok; ++l) {
        ok = mod(F[y * L + l] - F[x * L + l] - rho.at(e, x, l), q) == 0;
      }
      if (ok) continue;

      // Walk both endpoints up to their lowest common ancestor.
      std::vector<std::size_t> down_x;
      std::vector<std::size_t> up_y;
      std::size_t a = x;
      std::size_t b = y;
      while (depth[a] > depth[b]) {
        down_x.push_back(a);
        a = parent[a];
      }
      while (depth[b] > depth[a]) {
        up_y.push_back(b);
        b = parent[b];
      }
      while (a != b) {
        down_x.push_back(a);
        a = parent[a];
        up_y.push_back(b);
        b = parent[b];
      }
      Obstruction obs;
      std::reverse(down_x.begin(), down_x.end());
      for (std::size_t node : down_x) {
        obs.cycle.push_back(CycleEdge{parent[node], node, G.basis(parent_gen[node]), true});
      }
      obs.cycle.push_back(CycleEdge{x, y, e, true});
      for (std::size_t node : up_y) {
        obs.cycle.push_back(CycleEdge{parent[node], node, G.basis(parent_gen[node]), false});
      }
      obs.holonomy.assign(L, 0);
      for (const CycleEdge& edge : obs.cycle) {
        for (int l = 0; l < L; ++l) {
          const std::int64_t v = rho.at(edge.g, edge.from, l);
          obs.holonomy[l] = mod(obs.holonomy[l] + (edge.forward ? v : -v), q);
        }
      }
      result.obstruction = std::move(obs);
      return result;
    }
  }

  for (std::size_t g = 0; g < G.size(); ++g) {
    for (std::size_t x = 0; x < X; ++x) {
      const std::size_t y = system.act(g, x);
      for (int l = 0; l < L; ++l) {
        if (mod(F[y * L + l] - F[x * L + l] - rho.at(g, x, l), q) != 0) {
          throw ContractError("table agrees with a coboundary on generators but not at g=" +
                              std::to_string(g) + ", x=" + std::to_string(x) +
                              "; it is not a cocycle");
        }
      }
    }
  }
  result.witness = CoboundaryWitness{std::move(F), std::move(basepoints)};
  return result;
}

CoboundaryResult solve_coboundary(const FiniteSystem& system, const CocycleTable& rho,
                                  const ComputeOptions& options) {
  const CocycleCheck check = is_cocycle(system, rho, options);
  if (!check.ok) {
    throw ContractError("not a cocycle at " + triple(check.g, check.g2, check.x));
  }
  return find_antiderivative(system, rho, options);
}

CocycleTable cube_lift(const FiniteSystem& system, const CubeMeasure& cubes,
                       const CocycleTable& f) {
  f.require_compatible(system);
  const CubeVertexSet verts(cubes.k);
  const std::size_t S = cubes.size();
  const int L = f.L();
  const std::int64_t q = f.modulus();
  std::vector<std::int64_t> values(f.group_size() * S * L, 0);
  for (std::size_t g = 0; g < f.group_size(); ++g) {
    for (std::size_t s = 0; s < S; ++s) {
      const auto cube = cubes.cube(s);
      for (int l = 0; l < L; ++l) {
        std::int64_t acc = 0;
        for (std::size_t v = 0; v < cubes.vertices; ++v) {
          const std::int64_t val = f.at(g, cube[v], l);
          acc += verts.sign(v) > 0 ? val : -val;
        }
        values[(g * S + s) * L + l] = mod(acc, q);
      }
    }
  }
  return CocycleTable(f.p(), f.n(), S, f.m(), L, std::move(values));
}

TypeTestResult type_test(const FiniteSystem& system, const CocycleTable& f, int k,
                         const ComputeOptions& options) {
  if (k < 0) throw DomainError("type must be nonnegative");
  const CocycleCheck check = is_cocycle(system, f, options);
  if (!check.ok) {
    throw ContractError("not a cocycle at " + triple(check.g, check.g2, check.x));
  }
  const CubeMeasure cubes = cube_space(system, k, options);
  const FiniteSystem lifted_system = cube_system(system, cubes);
  const CocycleTable lifted = cube_lift(system, cubes, f);
  TypeTestResult out;
  out.cube_points = cubes.size();
  out.detail = find_antiderivative(lifted_system, lifted, options);
  out.passed = out.detail.solved();
  return out;
}

DegreeCertificate system_degree(const FiniteSystem& system, const SystemPhase& f, int k_max) {
  if (f.exponents.size() != system.size()) {
    throw DimensionError("phase has " + std::to_string(f.exponents.size()) +
                         " values for a system of " + std::to_string(system.size()) +
                         " points");
  }
  if (f.m < 1) throw DomainError("phase torsion must be positive");
  return degree_test(system.generators(), f.exponents, checked_pow(system.p(), f.m), k_max);
}

VerticalDerivative vertical_derivative(const FiniteSystem& extension, const SystemPhase& f,
                                       std::size_t t, int k_max, std::optional<int> bound) {
  const std::vector<std::uint32_t> shift = fiber_translation(extension, t);
  if (f.exponents.size() != extension.size()) {
    throw DimensionError("phase does not match the extension");
  }
  const std::int64_t q = checked_pow(extension.p(), f.m);
  VerticalDerivative out;
  out.derivative.m = f.m;
  out.derivative.exponents.resize(f.exponents.size());
  for (std::size_t x = 0; x < f.exponents.size(); ++x) {
    out.derivative.exponents[x] = mod(f.exponents[shift[x]] - f.exponents[x], q);
  }
  out.input_degree = system_degree(extension, f, k_max).degree;
  out.output_degree = system_degree(extension, out.derivative, k_max).degree;
  if (bound && !(out.output_degree && *out.output_degree < *bound)) {
    throw InternalConsistencyError(
        "vertical derivative has degree " +
        (out.output_degree ? std::to_string(*out.output_degree) : std::string("> k_max")) +
        ", expected < " + std::to_string(*bound));
  }
  return out;
}

CocycleTorsionAudit cocycle_torsion_audit(const FiniteSystem& system, const CocycleTable& rho,
                                          int k, const ComputeOptions& options) {
  if (k < 1) throw DomainError("cocycle torsion audit needs k >= 1");
  if (rho.L() != 1) throw DimensionError("cocycle torsion audit needs a cyclic fiber");
  const CocycleCheck check = is_cocycle(system, rho, options);
  if (!check.ok) {
    throw ContractError("not a cocycle at " + triple(check.g, check.g2, check.x));
  }
  const std::size_t X = system.size();
  for (std::size_t g = 0; g < rho.group_size(); ++g) {
    SystemPhase slice{std::vector<std::int64_t>(X), rho.m()};
    for (std::size_t x = 0; x < X; ++x) slice.exponents[x] = rho.at(g, x);
    if (!system_degree(system, slice, k).below(k)) {
      throw ContractError("rho(" + std::to_string(g) + ", .) is not of degree < " +
                          std::to_string(k));
    }
  }
  CocycleTorsionAudit audit;
  audit.k = k;
  audit.asserted_torsion = cocycle_torsion_bound(system.p(), k);
  for (std::size_t g = 0; g < rho.group_size(); ++g) {
    for (std::size_t x = 0; x < X; ++x) {
      const std::int64_t v = mod(rho.at(g, x), rho.modulus());
      const int torsion = v == 0 ? 0 : rho.m() - valuation(v, system.p());
      audit.measured_torsion = std::max(audit.measured_torsion, torsion);
      if (torsion > audit.asserted_torsion && !audit.witness) audit.witness = {{g, x}};
    }
  }
  audit.ok = !audit.witness;
  return audit;
}

SystemPhase vertical_character(const FiniteSystem& extension, int l) {
  if (!extension.fiber()) throw DomainError("system has no fiber");
  const Fiber& fiber = *extension.fiber();
  if (l < 0 || l >= fiber.L) throw DomainError("fiber coordinate out of range");
  const std::size_t U = fiber.fiber_size();
  const auto q = static_cast<std::size_t>(fiber.modulus());
  SystemPhase out;
  out.m = fiber.m;
  out.exponents.resize(extension.size());
  for (std::size_t id = 0; id < extension.size(); ++id) {
    std::size_t u = id % U;
    for (int i = 0; i < l; ++i) u /= q;
    out.exponents[id] = static_cast<std::int64_t>(u % q);
  }
  return out;
}

}  // namespace gowers
