#include "gowers/cube.h"

#include <algorithm>
#include <bit>
#include <string>

#include "gowers/error.h"

namespace gowers {

CubeVertexSet::CubeVertexSet(int k) : k_(k) {
  if (k < 0 || k > 20) throw DomainError("cube dimension must lie in [0, 20]");
}

int CubeVertexSet::coordinate(std::size_t v, int j) const {
  return ((v >> (k_ - j)) & 1) ? 1 : -1;
}

std::vector<int> CubeVertexSet::omega(std::size_t v) const {
  std::vector<int> out(k_);
  for (int j = 1; j <= k_; ++j) out[j - 1] = coordinate(v, j);
  return out;
}

int CubeVertexSet::sign(std::size_t v) const {
  const int minus = k_ - std::popcount(v);
  return (minus % 2 == 0) ? 1 : -1;
}

std::vector<std::size_t> CubeVertexSet::side(int j, int side) const {
  if (j < 1 || j > k_ || (side != 1 && side != -1)) {
    throw DomainError("side index out of range");
  }
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < size(); ++v) {
    if (coordinate(v, j) == side) out.push_back(v);
  }
  return out;
}

std::vector<std::vector<std::size_t>> CubeVertexSet::faces(int d) const {
  if (d < 0 || d > k_) throw DomainError("face dimension out of range");
  std::vector<std::vector<std::size_t>> out;
  const std::size_t full = size();
  for (std::size_t free_mask = 0; free_mask < full; ++free_mask) {
    if (std::popcount(free_mask) != d) continue;
    const std::size_t fixed_mask = (full - 1) & ~free_mask;
    // Enumerate assignments of the fixed bits as submasks of fixed_mask.
    std::size_t sub = 0;
    while (true) {
      std::vector<std::size_t> face;
      for (std::size_t v = 0; v < full; ++v) {
        if ((v & fixed_mask) == sub) face.push_back(v);
      }
      out.push_back(std::move(face));
      if (sub == fixed_mask) break;
      sub = (sub - fixed_mask) & fixed_mask;
    }
  }
  return out;
}

namespace {

void assign_blocks(CubeMeasure& m) {
  const auto labels = orbit_labels(m.size(), m.action);
  std::vector<std::uint32_t> block_index(m.size(), UINT32_MAX);
  m.blocks.clear();
  m.block_of.assign(m.size(), 0);
  for (std::size_t s = 0; s < m.size(); ++s) {
    const std::uint32_t root = labels[s];
    if (block_index[root] == UINT32_MAX) {
      block_index[root] = static_cast<std::uint32_t>(m.blocks.size());
      m.blocks.emplace_back();
    }
    m.block_of[s] = block_index[root];
    m.blocks[block_index[root]].push_back(static_cast<std::uint32_t>(s));
  }
  m.block_weights.assign(m.blocks.size(), 0.0);
  for (std::size_t b = 0; b < m.blocks.size(); ++b) {
    double w = 0;
    for (std::uint32_t s : m.blocks[b]) w += m.weights[s];
    m.block_weights[b] = w;
  }
}

CubeMeasure base_level(const FiniteSystem& system) {
  CubeMeasure m;
  m.k = 0;
  m.vertices = 1;
  std::vector<std::uint32_t> reindex(system.size(), UINT32_MAX);
  for (std::size_t x = 0; x < system.size(); ++x) {
    if (system.weights()[x] > 0) {
      reindex[x] = static_cast<std::uint32_t>(m.coords.size());
      m.coords.push_back(static_cast<std::uint32_t>(x));
      m.weights.push_back(system.weights()[x]);
    }
  }
  for (const auto& perm : system.generators()) {
    std::vector<std::uint32_t> act(m.size());
    for (std::size_t s = 0; s < m.size(); ++s) act[s] = reindex[perm[m.coords[s]]];
    m.action.push_back(std::move(act));
  }
  assign_blocks(m);
  return m;
}

CubeMeasure next_level(const CubeMeasure& lower, const ComputeOptions& options) {
  std::uint64_t next_size = 0;
  for (const auto& block : lower.blocks) {
    next_size += static_cast<std::uint64_t>(block.size()) * block.size();
  }
  const std::uint64_t entries = saturating_mul(next_size, 2 * lower.vertices);
  check_budget(entries, options, "cube_space level " + std::to_string(lower.k + 1));
  if (next_size >= UINT32_MAX) throw CapacityError("cube support exceeds 32-bit indexing");

  CubeMeasure m;
  m.k = lower.k + 1;
  m.vertices = 2 * lower.vertices;
  m.coords.resize(next_size * m.vertices);
  m.weights.resize(next_size);

  std::vector<std::uint32_t> position(lower.size());
  std::vector<std::uint64_t> offset(lower.blocks.size());
  std::uint64_t running = 0;
  for (std::size_t b = 0; b < lower.blocks.size(); ++b) {
    offset[b] = running;
    const auto& block = lower.blocks[b];
    for (std::size_t a = 0; a < block.size(); ++a) position[block[a]] = static_cast<std::uint32_t>(a);
    running += static_cast<std::uint64_t>(block.size()) * block.size();
  }

  for (std::size_t b = 0; b < lower.blocks.size(); ++b) {
    const auto& block = lower.blocks[b];
    const std::size_t bs = block.size();
    const double wb = lower.block_weights[b];
    for (std::size_t a = 0; a < bs; ++a) {
      const auto left = lower.cube(block[a]);
      const double wl = lower.weights[block[a]];
      for (std::size_t c = 0; c < bs; ++c) {
        const std::size_t s = offset[b] + a * bs + c;
        const auto right = lower.cube(block[c]);
        std::uint32_t* out = m.coords.data() + s * m.vertices;
        for (std::size_t v = 0; v < lower.vertices; ++v) {
          out[2 * v] = left[v];
          out[2 * v + 1] = right[v];
        }
        m.weights[s] = wl * lower.weights[block[c]] / wb;
      }
    }
  }

  for (const auto& act : lower.action) {
    std::vector<std::uint32_t> next(next_size);
    for (std::size_t b = 0; b < lower.blocks.size(); ++b) {
      const auto& block = lower.blocks[b];
      const std::size_t bs = block.size();
      for (std::size_t a = 0; a < bs; ++a) {
        const std::size_t ta = position[act[block[a]]];
        for (std::size_t c = 0; c < bs; ++c) {
          const std::size_t tc = position[act[block[c]]];
          next[offset[b] + a * bs + c] = static_cast<std::uint32_t>(offset[b] + ta * bs + tc);
        }
      }
    }
    m.action.push_back(std::move(next));
  }
  assign_blocks(m);
  return m;
}

}  // namespace

CubeMeasure cube_space(const FiniteSystem& system, int k, const ComputeOptions& options) {
  if (k < 0) throw DomainError("cube level must be nonnegative");
  CubeMeasure m = base_level(system);
  for (int level = 0; level < k; ++level) m = next_level(m, options);
  return m;
}

FiniteSystem cube_system(const FiniteSystem& system, const CubeMeasure& cubes) {
  return FiniteSystem(system.p(), system.n(), cubes.weights, cubes.action);
}

Complex integrate_vertex_product(const FiniteSystem& system,
                                 const CubeMeasure& lower,
                                 std::span<const std::vector<Complex>> tables,
                                 const ComputeOptions& options) {
  if (tables.size() != 2 * lower.vertices) {
    throw DimensionError("need 2^k tables for a level k-1 cube measure");
  }
  for (const auto& t : tables) {
    if (t.size() != system.size()) throw DimensionError("table size differs from the system");
  }
  check_budget(saturating_mul(lower.size(), tables.size()), options, "cube integral");
  std::vector<Complex> per_block(lower.blocks.size());
  parallel_for(lower.blocks.size(), options.threads, [&](std::size_t b) {
    Complex minus = 0, plus = 0;
    for (std::uint32_t s : lower.blocks[b]) {
      const auto cube = lower.cube(s);
      Complex a = lower.weights[s], c = lower.weights[s];
      for (std::size_t v = 0; v < lower.vertices; ++v) {
        a *= tables[2 * v][cube[v]];
        c *= tables[2 * v + 1][cube[v]];
      }
      minus += a;
      plus += c;
    }
    per_block[b] = minus * plus / lower.block_weights[b];
  });
  return tree_sum(per_block);
}

Complex integrate_vertex_product(const FiniteSystem& system,
                                 std::span<const std::vector<Complex>> tables,
                                 const ComputeOptions& options) {
  const std::size_t count = tables.size();
  if (count == 0 || (count & (count - 1)) != 0) {
    throw DimensionError("number of tables must be a power of two");
  }
  if (count == 1) {
    std::vector<Complex> terms(system.size());
    for (std::size_t x = 0; x < system.size(); ++x) {
      terms[x] = system.weights()[x] * tables[0][x];
    }
    return tree_sum(terms);
  }
  const int k = std::countr_zero(count);
  const CubeMeasure lower = cube_space(system, k - 1, options);
  return integrate_vertex_product(system, lower, tables, options);
}

}  // namespace gowers
