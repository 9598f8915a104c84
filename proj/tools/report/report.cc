#include "report.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace gowers::report {
namespace {

void emit(const Json& v, std::string& out) {
  switch (v.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        emit(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        emit(v[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float:
      out += format_double(v.get<double>());
      break;
    default:
      out += v.dump();
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_double(double v) {
  if (v == 0) v = 0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

std::string canonical_json(const Json& value) {
  std::string out;
  emit(value, out);
  out += '\n';
  return out;
}

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(columns[i]);
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (const auto* n = std::get_if<long long>(&row[i])) {
        out += std::to_string(*n);
      } else if (const auto* d = std::get_if<double>(&row[i])) {
        out += format_double(*d);
      } else {
        out += csv_escape(std::get<std::string>(row[i]));
      }
    }
    out += '\n';
  }
  return out;
}

void write_artifact(const std::string& out_dir, const std::string& name,
                    const std::string& content) {
  std::filesystem::path dir(out_dir.empty() ? "." : out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const std::filesystem::path path = dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << content;
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace gowers::report
