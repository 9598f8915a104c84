#ifndef GOWERS_CUBE_H_
#define GOWERS_CUBE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gowers/compute.h"
#include "gowers/finite_system.h"

namespace gowers {

// The vertices {-1,+1}^k in lexicographic order. Vertex v has
// ω_j = +1 exactly when bit (k - j) of v is set, so ω_1 is the most
// significant coordinate and v = 0 is (-1, ..., -1).
class CubeVertexSet {
 public:
  explicit CubeVertexSet(int k);

  int k() const { return k_; }
  std::size_t size() const { return std::size_t{1} << k_; }
  // ω_j for j in [1, k].
  int coordinate(std::size_t v, int j) const;
  std::vector<int> omega(std::size_t v) const;
  // Product of the coordinates.
  int sign(std::size_t v) const;
  // Vertices with ω_j = side (side is -1 or +1).
  std::vector<std::size_t> side(int j, int side) const;
  // All faces of dimension d: C(k, d) * 2^(k-d) vertex lists.
  std::vector<std::vector<std::size_t>> faces(int d) const;

 private:
  int k_;
};

// μ^[k] on X^(2^k) as a weighted list of cubes, with its partition into
// diagonal orbits (the finite ergodic decomposition).
struct CubeMeasure {
  int k = 0;
  std::size_t vertices = 1;
  // Vertex v of cube s is coords[s * vertices + v].
  std::vector<std::uint32_t> coords;
  std::vector<double> weights;
  // Orbit index of each cube; orbits are numbered by least member.
  std::vector<std::uint32_t> block_of;
  // Members of each orbit in increasing order.
  std::vector<std::vector<std::uint32_t>> blocks;
  std::vector<double> block_weights;
  // Diagonal action of each generator on cube indices.
  std::vector<std::vector<std::uint32_t>> action;

  std::size_t size() const { return weights.size(); }
  std::span<const std::uint32_t> cube(std::size_t s) const {
    return {coords.data() + s * vertices, vertices};
  }
};

// μ^[0] is the system measure restricted to positive-weight points; level
// k+1 joins level k with itself over its diagonal orbits. Throws
// CapacityError if a level would hold more than options.budget coordinates.
CubeMeasure cube_space(const FiniteSystem& system, int k,
                       const ComputeOptions& options = {});

// The cube measure as a finite system under the diagonal action.
FiniteSystem cube_system(const FiniteSystem& system, const CubeMeasure& cubes);

// ∫ Π_v F_v(x_v) dμ^[k] for 2^k tables F_v over the system's points, using
// the level k-1 measure: the sum over its orbits B of
// w_B E_B[Π F_{2v}] E_B[Π F_{2v+1}]. `lower` must be cube_space(system, k-1).
Complex integrate_vertex_product(const FiniteSystem& system,
                                 const CubeMeasure& lower,
                                 std::span<const std::vector<Complex>> tables,
                                 const ComputeOptions& options = {});
// Same, building the lower level internally (k = log2 of tables.size()).
Complex integrate_vertex_product(const FiniteSystem& system,
                                 std::span<const std::vector<Complex>> tables,
                                 const ComputeOptions& options = {});

}  // namespace gowers

#endif  // GOWERS_CUBE_H_
