#ifndef GOWERS_FINITE_SYSTEM_H_
#define GOWERS_FINITE_SYSTEM_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gowers/group.h"

namespace gowers {

// Fiber data of a system built as base x (Z/p^m)^L. Point id x*|U| + u,
// where u encodes the fiber element in little-endian base p^m.
struct Fiber {
  std::size_t base_points = 0;
  int p = 2;
  int m = 1;
  int L = 1;

  std::int64_t modulus() const;
  std::size_t fiber_size() const;
};

// A finite probability space with a measure-preserving action of F_p^n
// given by one permutation per basis vector.
class FiniteSystem {
 public:
  // Validates: weights are a probability vector, each generator is a
  // measure-preserving permutation of p-torsion, and generators commute.
  // Throws ContractError on violation.
  FiniteSystem(int p, int n, std::vector<double> weights,
               std::vector<std::vector<std::uint32_t>> generators,
               std::optional<Fiber> fiber = std::nullopt);

  int p() const { return group_.p(); }
  int n() const { return group_.n(); }
  const Space& group() const { return group_; }
  std::size_t size() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<std::vector<std::uint32_t>>& generators() const { return generators_; }
  const std::optional<Fiber>& fiber() const { return fiber_; }

  // T_g x for any group element g (by index).
  std::size_t act(std::size_t g, std::size_t x) const {
    return action_[g * weights_.size() + x];
  }
  // Orbit label of every point: the least point id in its orbit.
  const std::vector<std::uint32_t>& orbit_labels() const { return orbit_labels_; }
  std::size_t orbit_count() const { return orbit_count_; }

 private:
  Space group_;
  std::vector<double> weights_;
  std::vector<std::vector<std::uint32_t>> generators_;
  std::optional<Fiber> fiber_;
  std::vector<std::uint32_t> action_;
  std::vector<std::uint32_t> orbit_labels_;
  std::size_t orbit_count_ = 0;
};

// G acting on itself by translation with the uniform measure.
FiniteSystem translation_system(int p, int n);

// Orbit labels (least member) for the group generated by `perms`.
std::vector<std::uint32_t> orbit_labels(
    std::size_t size, const std::vector<std::vector<std::uint32_t>>& perms);

// A (G, X, (Z/p^m)^L)-valued table: entry l of value(g, x) at
// [(g * |X| + x) * L + l], stored additively in Z/p^m.
class CocycleTable {
 public:
  CocycleTable(int p, int n, std::size_t points, int m, int L,
               std::vector<std::int64_t> values);

  static CocycleTable zero(const FiniteSystem& system, int m, int L);
  // g -> F(T_g x) - F(x) for F: X -> (Z/p^m)^L stored as [x * L + l].
  static CocycleTable coboundary(const FiniteSystem& system, int m, int L,
                                 const std::vector<std::int64_t>& potential);
  // (g, x) -> xi(g) for a Z/p^m-valued character given on the basis.
  static CocycleTable character(const FiniteSystem& system, int m,
                                const std::vector<std::int64_t>& on_basis);

  int p() const { return p_; }
  int n() const { return n_; }
  std::size_t group_size() const { return group_size_; }
  std::size_t points() const { return points_; }
  int m() const { return m_; }
  int L() const { return L_; }
  std::int64_t modulus() const { return modulus_; }
  const std::vector<std::int64_t>& values() const { return values_; }

  std::int64_t at(std::size_t g, std::size_t x, int l = 0) const {
    return values_[(g * points_ + x) * L_ + l];
  }
  std::int64_t& at(std::size_t g, std::size_t x, int l = 0) {
    return values_[(g * points_ + x) * L_ + l];
  }

  void require_compatible(const FiniteSystem& system) const;

 private:
  int p_;
  int n_;
  std::size_t group_size_;
  std::size_t points_;
  int m_;
  int L_;
  std::int64_t modulus_;
  std::vector<std::int64_t> values_;
};

}  // namespace gowers

#endif  // GOWERS_FINITE_SYSTEM_H_
