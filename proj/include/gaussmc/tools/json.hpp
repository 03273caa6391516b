#pragma once

#include <string>

#include <json.hpp>

#include "gaussmc/common.hpp"

namespace gaussmc {

using Json = nlohmann::ordered_json;

/// Pretty JSON with every floating-point number printed to 12 significant
/// digits, -0 as 0 and non-finite values as null.
std::string dump_json(const Json& j);

std::string format_number(double x);

Json to_json(const Vector<double>& v);
Json to_json(const Matrix<double>& m);

}  // namespace gaussmc
