#include "gowers/system_io.h"

#include "gowers/error.h"
#include "gowers/function_io.h"
#include "json_util.h"

namespace gowers {

using detail::as_array;
using detail::as_double;
using detail::as_int;
using detail::field;
using detail::Json;

FiniteSystem parse_system(std::string_view text, const std::string& source) {
  const Json doc = detail::parse_json(text, source);
  const std::int64_t p = as_int(field(doc, "p", source), source + ": field \"p\"");
  const std::int64_t n = as_int(field(doc, "n", source), source + ": field \"n\"");
  const std::int64_t points =
      as_int(field(doc, "points", source), source + ": field \"points\"");
  if (p < 2 || n < 0 || n > 64) throw ParseError(source + ": invalid p or n");
  if (points < 1 || points > (std::int64_t{1} << 26)) {
    throw ParseError(source + ": field \"points\" out of range");
  }
  const auto X = static_cast<std::size_t>(points);

  std::vector<double> weights(X, 1.0 / static_cast<double>(X));
  if (doc.contains("weights")) {
    const Json& w = as_array(doc["weights"], source + ": field \"weights\"");
    if (w.size() != X) throw ParseError(source + ": field \"weights\" has wrong length");
    for (std::size_t i = 0; i < X; ++i) {
      weights[i] = as_double(w[i], source + ": weights[" + std::to_string(i) + "]");
    }
  }

  const Json& gens = as_array(field(doc, "generators", source), source + ": field \"generators\"");
  if (gens.size() != static_cast<std::size_t>(n)) {
    throw ParseError(source + ": expected " + std::to_string(n) + " generators");
  }
  std::vector<std::vector<std::uint32_t>> perms;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string where = source + ": generators[" + std::to_string(i) + "]";
    const Json& g = as_array(gens[i], where);
    if (g.size() != X) throw ParseError(where + ": wrong length");
    std::vector<std::uint32_t> perm(X);
    for (std::size_t x = 0; x < X; ++x) {
      const std::int64_t y = as_int(g[x], where);
      if (y < 0 || y >= points) throw ParseError(where + ": point out of range");
      perm[x] = static_cast<std::uint32_t>(y);
    }
    perms.push_back(std::move(perm));
  }

  std::optional<Fiber> fiber;
  if (doc.contains("fiber") && !doc["fiber"].is_null()) {
    const Json& f = doc["fiber"];
    const std::string where = source + ": field \"fiber\"";
    Fiber fb;
    fb.p = static_cast<int>(p);
    fb.base_points = static_cast<std::size_t>(as_int(field(f, "base_points", where), where));
    fb.m = static_cast<int>(as_int(field(f, "m", where), where));
    fb.L = f.contains("L") ? static_cast<int>(as_int(f["L"], where)) : 1;
    fiber = fb;
  }
  return FiniteSystem(static_cast<int>(p), static_cast<int>(n), std::move(weights),
                      std::move(perms), fiber);
}

FiniteSystem load_system(const std::string& path) {
  return parse_system(read_file(path), path);
}

std::string system_to_json(const FiniteSystem& system) {
  Json doc;
  doc["p"] = system.p();
  doc["n"] = system.n();
  doc["points"] = system.size();
  doc["weights"] = system.weights();
  doc["generators"] = system.generators();
  if (system.fiber()) {
    doc["fiber"] = {{"base_points", system.fiber()->base_points},
                    {"m", system.fiber()->m},
                    {"L", system.fiber()->L}};
  }
  return doc.dump() + "\n";
}

CocycleTable parse_cocycle(std::string_view text, const FiniteSystem& system,
                           const std::string& source) {
  const Json doc = detail::parse_json(text, source);
  const std::int64_t m = as_int(field(doc, "m", source), source + ": field \"m\"");
  const std::int64_t L = doc.contains("L") ? as_int(doc["L"], source + ": field \"L\"") : 1;
  if (m < 0 || m > 30 || L < 1 || L > 16) throw ParseError(source + ": invalid m or L");
  const Json& values = as_array(field(doc, "values", source), source + ": field \"values\"");
  const std::size_t G = system.group().size();
  const std::size_t X = system.size();
  const auto l_count = static_cast<std::size_t>(L);
  std::vector<std::int64_t> flat;
  flat.reserve(G * X * l_count);

  if (!values.empty() && values[0].is_array()) {
    if (values.size() != G) throw ParseError(source + ": values needs one row per group element");
    for (std::size_t g = 0; g < G; ++g) {
      const std::string row = source + ": values[" + std::to_string(g) + "]";
      const Json& r = as_array(values[g], row);
      if (r.size() != X) throw ParseError(row + ": wrong length");
      for (std::size_t x = 0; x < X; ++x) {
        const std::string where = row + "[" + std::to_string(x) + "]";
        if (l_count == 1 && !r[x].is_array()) {
          flat.push_back(as_int(r[x], where));
          continue;
        }
        const Json& cell = as_array(r[x], where);
        if (cell.size() != l_count) throw ParseError(where + ": wrong length");
        for (const Json& c : cell) flat.push_back(as_int(c, where));
      }
    }
  } else {
    if (values.size() != G * X * l_count) throw ParseError(source + ": values has wrong length");
    for (std::size_t i = 0; i < values.size(); ++i) {
      flat.push_back(as_int(values[i], source + ": values[" + std::to_string(i) + "]"));
    }
  }
  return CocycleTable(system.p(), system.n(), X, static_cast<int>(m), static_cast<int>(L),
                      std::move(flat));
}

CocycleTable load_cocycle(const std::string& path, const FiniteSystem& system) {
  return parse_cocycle(read_file(path), system, path);
}

std::string cocycle_to_json(const CocycleTable& rho) {
  Json doc;
  doc["m"] = rho.m();
  doc["L"] = rho.L();
  doc["values"] = rho.values();
  return doc.dump() + "\n";
}

}  // namespace gowers
