#ifndef GOWERS_FUNCTION_IO_H_
#define GOWERS_FUNCTION_IO_H_

#include <optional>
#include <string>
#include <string_view>

#include "gowers/function_space.h"

namespace gowers {

// {"p": P, "n": N, "values": [[re, im], ...]} in index order, optionally with
// "m": M and "exponents": [...] describing the same function as e(P / p^M).
struct LoadedFunction {
  GroupFunction function;
  std::optional<ExponentFunction> exponents;
};

// Throws ParseError with "source:line:column" or the offending field.
LoadedFunction parse_function(std::string_view text, const std::string& source = "<input>");
LoadedFunction load_function(const std::string& path);

std::string function_to_json(const GroupFunction& f);
std::string function_to_json(const ExponentFunction& P);

// Reads a whole file; throws ParseError naming the path if it cannot be read.
std::string read_file(const std::string& path);

}  // namespace gowers

#endif  // GOWERS_FUNCTION_IO_H_
