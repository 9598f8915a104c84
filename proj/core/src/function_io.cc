#include "gowers/function_io.h"

#include <fstream>
#include <sstream>

#include "gowers/error.h"
#include "json_util.h"

namespace gowers {

using detail::as_array;
using detail::as_double;
using detail::as_int;
using detail::field;
using detail::Json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

LoadedFunction parse_function(std::string_view text, const std::string& source) {
  const Json doc = detail::parse_json(text, source);
  const std::int64_t p = as_int(field(doc, "p", source), source + ": field \"p\"");
  const std::int64_t n = as_int(field(doc, "n", source), source + ": field \"n\"");
  if (n < 0 || p < 2 || p > 1 << 20) throw ParseError(source + ": invalid p or n");
  const Space space(static_cast<int>(p), static_cast<int>(n));
  const Json& values = as_array(field(doc, "values", source), source + ": field \"values\"");
  if (values.size() != space.size()) {
    throw ParseError(source + ": field \"values\" has " + std::to_string(values.size()) +
                     " entries, expected " + std::to_string(space.size()));
  }
  std::vector<Complex> table;
  table.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::string where = source + ": values[" + std::to_string(i) + "]";
    const Json& v = values[i];
    if (v.is_number()) {
      table.emplace_back(as_double(v, where), 0.0);
    } else if (v.is_array() && v.size() == 2) {
      table.emplace_back(as_double(v[0], where), as_double(v[1], where));
    } else {
      throw ParseError(where + ": expected [re, im]");
    }
  }
  LoadedFunction out{GroupFunction(space, std::move(table)), std::nullopt};

  if (doc.contains("exponents")) {
    const std::int64_t m = as_int(field(doc, "m", source), source + ": field \"m\"");
    if (m < 1 || m > 30) throw ParseError(source + ": field \"m\" out of range");
    const Json& exps = as_array(doc["exponents"], source + ": field \"exponents\"");
    if (exps.size() != space.size()) {
      throw ParseError(source + ": field \"exponents\" has wrong length");
    }
    std::vector<std::int64_t> e;
    e.reserve(exps.size());
    for (std::size_t i = 0; i < exps.size(); ++i) {
      e.push_back(as_int(exps[i], source + ": exponents[" + std::to_string(i) + "]"));
    }
    ExponentFunction P(space, static_cast<int>(m), std::move(e));
    const GroupFunction phase = P.to_function();
    for (std::size_t x = 0; x < space.size(); ++x) {
      if (std::abs(phase[x] - out.function[x]) > 1e-9) {
        throw ParseError(source + ": exponents disagree with values at index " +
                         std::to_string(x));
      }
    }
    out.exponents = std::move(P);
  }
  return out;
}

LoadedFunction load_function(const std::string& path) {
  return parse_function(read_file(path), path);
}

std::string function_to_json(const GroupFunction& f) {
  Json doc;
  doc["p"] = f.space().p();
  doc["n"] = f.space().n();
  Json values = Json::array();
  for (const Complex& v : f.values()) values.push_back({v.real(), v.imag()});
  doc["values"] = std::move(values);
  return doc.dump() + "\n";
}

std::string function_to_json(const ExponentFunction& P) {
  Json doc = Json::parse(function_to_json(P.to_function()));
  doc["m"] = P.m();
  doc["exponents"] = P.exponents();
  return doc.dump() + "\n";
}

}  // namespace gowers
