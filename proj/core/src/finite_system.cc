#include "gowers/finite_system.h"

#include <cmath>
#include <numeric>
#include <string>

#include "gowers/error.h"

namespace gowers {

namespace {

constexpr std::size_t kMaxActionEntries = std::size_t{1} << 27;

std::size_t find_root(std::vector<std::uint32_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

std::size_t Fiber::fiber_size() const {
  return static_cast<std::size_t>(checked_pow(modulus(), L));
}

std::int64_t Fiber::modulus() const { return checked_pow(p, m); }

std::vector<std::uint32_t> orbit_labels(
    std::size_t size, const std::vector<std::vector<std::uint32_t>>& perms) {
  std::vector<std::uint32_t> parent(size);
  std::iota(parent.begin(), parent.end(), 0u);
  for (const auto& perm : perms) {
    for (std::size_t x = 0; x < size; ++x) {
      std::size_t a = find_root(parent, x);
      std::size_t b = find_root(parent, perm[x]);
      if (a == b) continue;
      // The smaller id becomes the root so labels are least members.
      if (a < b) {
        parent[b] = static_cast<std::uint32_t>(a);
      } else {
        parent[a] = static_cast<std::uint32_t>(b);
      }
    }
  }
  std::vector<std::uint32_t> labels(size);
  for (std::size_t x = 0; x < size; ++x) {
    labels[x] = static_cast<std::uint32_t>(find_root(parent, x));
  }
  return labels;
}

FiniteSystem::FiniteSystem(int p, int n, std::vector<double> weights,
                           std::vector<std::vector<std::uint32_t>> generators,
                           std::optional<Fiber> fiber)
    : group_(p, n),
      weights_(std::move(weights)),
      generators_(std::move(generators)),
      fiber_(fiber) {
  const std::size_t size = weights_.size();
  if (size == 0) throw ContractError("system has no points");
  if (size > UINT32_MAX) throw CapacityError("too many points");
  if (static_cast<int>(generators_.size()) != n) {
    throw ContractError("expected " + std::to_string(n) + " generators, got " +
                        std::to_string(generators_.size()));
  }
  double total = 0;
  for (double w : weights_) {
    if (!(w >= 0) || !std::isfinite(w)) throw ContractError("weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ContractError("weights sum to " + std::to_string(total) + ", not 1");
  }
  for (int i = 0; i < n; ++i) {
    const auto& perm = generators_[i];
    if (perm.size() != size) {
      throw ContractError("generator " + std::to_string(i) + " has wrong length");
    }
    std::vector<char> seen(size, 0);
    for (std::size_t x = 0; x < size; ++x) {
      if (perm[x] >= size || seen[perm[x]]) {
        throw ContractError("generator " + std::to_string(i) + " is not a permutation");
      }
      seen[perm[x]] = 1;
      if (std::abs(weights_[perm[x]] - weights_[x]) > 1e-12 * std::max(1.0, weights_[x])) {
        throw ContractError("generator " + std::to_string(i) +
                            " does not preserve the measure at point " +
                            std::to_string(x));
      }
    }
    for (std::size_t x = 0; x < size; ++x) {
      std::size_t y = x;
      for (int r = 0; r < p; ++r) y = perm[y];
      if (y != x) {
        throw ContractError("generator " + std::to_string(i) + " is not " +
                            std::to_string(p) + "-torsion at point " + std::to_string(x));
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (std::size_t x = 0; x < size; ++x) {
        if (generators_[i][generators_[j][x]] != generators_[j][generators_[i][x]]) {
          throw ContractError("generators " + std::to_string(i) + " and " +
                              std::to_string(j) + " do not commute");
        }
      }
    }
  }

  const std::size_t gsize = group_.size();
  if (gsize > kMaxActionEntries / size) {
    throw CapacityError("action table of " + std::to_string(gsize) + " x " +
                        std::to_string(size) + " entries is too large");
  }
  action_.resize(gsize * size);
  for (std::size_t x = 0; x < size; ++x) action_[x] = static_cast<std::uint32_t>(x);
  for (std::size_t g = 1; g < gsize; ++g) {
    // g = prev + e_i with i the lowest nonzero coordinate.
    int i = 0;
    while (group_.coord(g, i) == 0) ++i;
    const std::size_t prev = g - group_.basis(i);
    const auto& perm = generators_[i];
    for (std::size_t x = 0; x < size; ++x) {
      action_[g * size + x] = perm[action_[prev * size + x]];
    }
  }
  orbit_labels_ = gowers::orbit_labels(size, generators_);
  for (std::size_t x = 0; x < size; ++x) {
    if (orbit_labels_[x] == x) ++orbit_count_;
  }
  if (fiber_) {
    if (fiber_->p != p) throw ContractError("fiber characteristic differs from p");
    if (fiber_->base_points * fiber_->fiber_size() != size) {
      throw ContractError("fiber structure does not match the point count");
    }
  }
}

FiniteSystem translation_system(int p, int n) {
  const Space space(p, n);
  std::vector<std::vector<std::uint32_t>> gens;
  for (int i = 0; i < n; ++i) gens.push_back(space.translation(space.basis(i)));
  std::vector<double> weights(space.size(), 1.0 / static_cast<double>(space.size()));
  return FiniteSystem(p, n, std::move(weights), std::move(gens));
}

CocycleTable::CocycleTable(int p, int n, std::size_t points, int m, int L,
                           std::vector<std::int64_t> values)
    : p_(p),
      n_(n),
      group_size_(Space(p, n).size()),
      points_(points),
      m_(m),
      L_(L),
      modulus_(checked_pow(p, m)),
      values_(std::move(values)) {
  if (m < 0 || L < 1) throw DomainError("invalid fiber group");
  if (values_.size() != group_size_ * points_ * static_cast<std::size_t>(L_)) {
    throw DimensionError("cocycle table needs |G|*|X|*L entries");
  }
  for (auto& v : values_) v = mod(v, modulus_);
}

CocycleTable CocycleTable::zero(const FiniteSystem& system, int m, int L) {
  return CocycleTable(system.p(), system.n(), system.size(), m, L,
                      std::vector<std::int64_t>(system.group().size() * system.size() * L, 0));
}

CocycleTable CocycleTable::coboundary(const FiniteSystem& system, int m, int L,
                                      const std::vector<std::int64_t>& potential) {
  if (potential.size() != system.size() * static_cast<std::size_t>(L)) {
    throw DimensionError("potential needs |X|*L entries");
  }
  CocycleTable out = zero(system, m, L);
  for (std::size_t g = 0; g < system.group().size(); ++g) {
    for (std::size_t x = 0; x < system.size(); ++x) {
      const std::size_t y = system.act(g, x);
      for (int l = 0; l < L; ++l) {
        out.at(g, x, l) = mod(potential[y * L + l] - potential[x * L + l], out.modulus());
      }
    }
  }
  return out;
}

CocycleTable CocycleTable::character(const FiniteSystem& system, int m,
                                     const std::vector<std::int64_t>& on_basis) {
  if (static_cast<int>(on_basis.size()) != system.n()) {
    throw DimensionError("character needs one value per basis vector");
  }
  CocycleTable out = zero(system, m, 1);
  const Space& g_space = system.group();
  for (std::size_t g = 0; g < g_space.size(); ++g) {
    std::int64_t v = 0;
    for (int i = 0; i < system.n(); ++i) v += g_space.coord(g, i) * on_basis[i];
    for (std::size_t x = 0; x < system.size(); ++x) out.at(g, x) = mod(v, out.modulus());
  }
  return out;
}

void CocycleTable::require_compatible(const FiniteSystem& system) const {
  if (system.p() != p_ || system.n() != n_ || system.size() != points_) {
    throw DimensionError("cocycle table does not match the system");
  }
}

}  // namespace gowers
