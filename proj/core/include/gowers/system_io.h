#ifndef GOWERS_SYSTEM_IO_H_
#define GOWERS_SYSTEM_IO_H_

#include <string>
#include <string_view>

#include "gowers/finite_system.h"

namespace gowers {

// {"p": P, "n": N, "points": |X|, "weights": [...] (optional, uniform if
// absent), "generators": [[perm of basis vector 0], ...],
// "fiber": {"base_points": B, "m": M, "L": L} (optional)}.
FiniteSystem parse_system(std::string_view text, const std::string& source = "<input>");
FiniteSystem load_system(const std::string& path);
std::string system_to_json(const FiniteSystem& system);

// {"m": M, "L": L (optional, default 1), "values": ...} where values is
// either flat in CocycleTable layout or nested as values[g][x] (L = 1) or
// values[g][x][l].
CocycleTable parse_cocycle(std::string_view text, const FiniteSystem& system,
                           const std::string& source = "<input>");
CocycleTable load_cocycle(const std::string& path, const FiniteSystem& system);
std::string cocycle_to_json(const CocycleTable& rho);

}  // namespace gowers

#endif  // GOWERS_SYSTEM_IO_H_
