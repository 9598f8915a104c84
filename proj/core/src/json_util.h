#ifndef GOWERS_SRC_JSON_UTIL_H_
#define GOWERS_SRC_JSON_UTIL_H_

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>

#include "gowers/error.h"
#include "json.hpp"

namespace gowers::detail {

using Json = nlohmann::json;

inline Json parse_json(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = e.byte == 0 ? 0 : std::min(e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                     ": malformed JSON");
  }
}

inline const Json& field(const Json& obj, const char* key, const std::string& source) {
  if (!obj.is_object()) throw ParseError(source + ": expected a JSON object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(source + ": missing field \"" + key + "\"");
  return *it;
}

inline std::int64_t as_int(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
  return v.get<std::int64_t>();
}

inline double as_double(const Json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": expected a number");
  return v.get<double>();
}

inline const Json& as_array(const Json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array");
  return v;
}

}  // namespace gowers::detail

#endif  // GOWERS_SRC_JSON_UTIL_H_
