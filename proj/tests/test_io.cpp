#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "gaussmc/catalog.hpp"
#include "gaussmc/tools/io.hpp"
#include "gaussmc/tools/json.hpp"
#include "gaussmc/tools/report.hpp"
#include "test_util.hpp"

using namespace gaussmc;
using gaussmc::testing::MatrixNear;

TEST(ParseState, RoundTrip) {
  Vector<double> mean(4);
  mean << 0.125, -1, 2, 0;
  const GaussianState<double> s(mean, ca_state(2.0, 1.0).cov());
  const auto back = io::parse_state(io::state_to_json(s).dump());
  EXPECT_TRUE(MatrixNear(back.cov(), s.cov(), 0));
  EXPECT_TRUE(MatrixNear(back.mean(), s.mean(), 0));
}

TEST(ParseState, MeanIsOptional) {
  const auto s = io::parse_state(R"({"cov": [[1, 0], [0, 1]]})");
  EXPECT_EQ(s.modes(), 1);
  EXPECT_EQ(s.mean(), Vector<double>::Zero(2));
}

TEST(ParseState, Rejections) {
  EXPECT_THROW(io::parse_state("{"), io::InputError);
  EXPECT_THROW(io::parse_state("[]"), io::InputError);
  EXPECT_THROW(io::parse_state(R"({"cov": [[1, 0], [0]]})"), io::InputError);
  EXPECT_THROW(io::parse_state(R"({"cov": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})"), io::InputError);
  EXPECT_THROW(io::parse_state(R"({"cov": [[1, "a"], [0, 1]]})"), io::InputError);
  EXPECT_THROW(io::parse_state(R"({"modes": 2, "cov": [[1, 0], [0, 1]]})"), io::InputError);
  EXPECT_THROW(io::parse_state(R"({"ordering": "xxpp", "cov": [[1, 0], [0, 1]]})"), io::InputError);
  EXPECT_THROW(io::parse_state(R"({"mean": [0], "cov": [[1, 0], [0, 1]]})"), io::InputError);
  EXPECT_THROW(io::read_file("/nonexistent/state.json"), io::InputError);
}

TEST(ParseState, ErrorNamesLineAndColumn) {
  try {
    io::parse_state("{\n  \"cov\": [[1, 0],\n  [0, 1],]\n}");
    FAIL();
  } catch (const io::InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(FormatNumber, TwelveSignificantDigits) {
  EXPECT_EQ(format_number(1 / std::sqrt(3.0)), "0.577350269190");
  EXPECT_EQ(format_number(1.0), "1.00000000000");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1e-9), "1.00000000000e-09");
  EXPECT_EQ(format_number(std::numeric_limits<double>::quiet_NaN()), "null");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "null");
}

TEST(DumpJson, IsValidAndStable) {
  Json j;
  j["a"] = 0.1;
  j["b"] = Json::array({1, 2.5, "x"});
  j["c"] = Json::object();
  j["d"] = Json::array({Json::array({1.0, 2.0})});
  j["e"] = std::numeric_limits<double>::infinity();
  const std::string text = dump_json(j);
  EXPECT_EQ(text, dump_json(j));
  const auto back = Json::parse(text);
  EXPECT_DOUBLE_EQ(back["a"].get<double>(), 0.1);
  EXPECT_TRUE(back["e"].is_null());
  EXPECT_EQ(back["b"][2], "x");
}

TEST(Sha256, KnownDigest) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
