#include "gaussmc/tools/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace gaussmc::io {

namespace {

double number(const Json& v, const char* where) {
  if (!v.is_number()) throw InputError(std::string(where) + " must contain only numbers");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InputError(std::string(where) + " contains a non-finite value");
  return x;
}

}  // namespace

GaussianState<double> parse_state(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw InputError(e.what());
  }
  if (!doc.is_object()) throw InputError("state document must be a JSON object");
  if (!doc.contains("cov") || !doc["cov"].is_array()) throw InputError("state document needs a \"cov\" array");
  if (doc.contains("ordering") && doc["ordering"] != "xpxp") {
    throw InputError("unsupported quadrature ordering " + doc["ordering"].dump() + " (expected \"xpxp\")");
  }

  const Json& rows = doc["cov"];
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix<double> cov(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw InputError("\"cov\" must be a square matrix; row " + std::to_string(r) + " has the wrong length");
    }
    for (Eigen::Index c = 0; c < n; ++c) cov(r, c) = number(row[static_cast<std::size_t>(c)], "\"cov\"");
  }

  Vector<double> mean = Vector<double>::Zero(n);
  if (doc.contains("mean")) {
    const Json& m = doc["mean"];
    if (!m.is_array() || static_cast<Eigen::Index>(m.size()) != n) {
      throw InputError("\"mean\" must have " + std::to_string(n) + " entries");
    }
    for (Eigen::Index i = 0; i < n; ++i) mean(i) = number(m[static_cast<std::size_t>(i)], "\"mean\"");
  }
  if (doc.contains("modes")) {
    if (!doc["modes"].is_number_integer() || 2 * doc["modes"].get<long long>() != n) {
      throw InputError("\"modes\" does not match the covariance dimension");
    }
  }
  try {
    return GaussianState<double>(std::move(mean), std::move(cov));
  } catch (const StructuralError& e) {
    throw InputError(e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json state_to_json(const GaussianState<double>& state) {
  Json j;
  j["modes"] = state.modes();
  j["ordering"] = "xpxp";
  j["mean"] = to_json(state.mean());
  j["cov"] = to_json(state.cov());
  return j;
}

}  // namespace gaussmc::io
