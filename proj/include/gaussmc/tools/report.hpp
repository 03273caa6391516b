#pragma once

#include <string>
#include <string_view>

#include "gaussmc/tools/json.hpp"

namespace gaussmc {

inline constexpr const char* kVersion = "0.3.0";

std::string sha256_hex(std::string_view data);

/// Envelope shared by every CLI command.
struct RunReport {
  Json command = Json::array();
  std::string input_digest;
  Json tolerances = Json::object();
  Json results = Json::object();

  Json to_json() const;
};

}  // namespace gaussmc
