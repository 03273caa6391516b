#pragma once

#include <string>
#include <string_view>

#include "gaussmc/common.hpp"
#include "gaussmc/phase_space.hpp"
#include "gaussmc/tools/json.hpp"

namespace gaussmc::io {

/// Unreadable file or malformed document. The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

/// {"modes": m, "ordering": "xpxp", "mean": [...], "cov": [[...], ...]}.
/// "mean" may be omitted (zero mean).
GaussianState<double> parse_state(std::string_view text);

std::string read_file(const std::string& path);

Json state_to_json(const GaussianState<double>& state);

}  // namespace gaussmc::io
