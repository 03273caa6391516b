#include "gaussmc/tools/json.hpp"

#include <cmath>
#include <cstdio>

namespace gaussmc {

std::string format_number(double x) {
  if (!std::isfinite(x)) return "null";
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%#.12g", x);
  return buf;
}

namespace {

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

void write(const Json& j, std::string& out, int indent) {
  const std::string pad(2 * (indent + 1), ' '), close(2 * indent, ' ');
  switch (j.type()) {
    case Json::value_t::number_float:
      out += format_number(j.get<double>());
      return;
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        write(value, out, indent + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool flat = true;
      for (const auto& v : j) flat = flat && is_scalar(v);
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        write(v, out, indent + 1);
      }
      out += flat ? "]" : "\n" + close + "]";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  write(j, out, 0);
  out += "\n";
  return out;
}

Json to_json(const Vector<double>& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json to_json(const Matrix<double>& m) {
  Json a = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(to_json(Vector<double>(m.row(r).transpose())));
  return a;
}

}  // namespace gaussmc
