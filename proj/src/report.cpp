#include "gaussmc/tools/report.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <stdexcept>

namespace gaussmc {

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

Json RunReport::to_json() const {
  Json j;
  j["tool"] = "gaussmc";
  j["version"] = kVersion;
  j["command"] = command;
  j["input_digest"] = input_digest.empty() ? Json(nullptr) : Json("sha256:" + input_digest);
  j["tolerances"] = tolerances;
  j["results"] = results;
  return j;
}

}  // namespace gaussmc
