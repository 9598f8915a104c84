#ifndef GOWERS_TOOLS_REPORT_H_
#define GOWERS_TOOLS_REPORT_H_

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace gowers::report {

using Json = nlohmann::json;

// Floats are printed as %.11e (12 significant digits); object keys are
// sorted; output ends with a newline.
std::string canonical_json(const Json& value);

std::string format_double(double v);

using Cell = std::variant<long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::string to_csv() const;
};

// Writes `content` to out_dir/name, creating out_dir. Throws
// std::runtime_error naming the path on failure.
void write_artifact(const std::string& out_dir, const std::string& name,
                    const std::string& content);

}  // namespace gowers::report

#endif  // GOWERS_TOOLS_REPORT_H_
