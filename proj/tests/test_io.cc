#include "skg/io.hpp"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <sstream>

#include "skg/errors.hpp"

namespace skg {
namespace {

using ::testing::HasSubstr;

TEST(MatrixJson, ParsesFloatsAndRationals) {
  auto p = ParseMatrixJson(R"({"k": 2, "entries": [[0.9, 0.6], [0.6, 0.3]]})");
  EXPECT_EQ(p.k(), 2);
  EXPECT_DOUBLE_EQ(p(0, 1), 0.6);
  EXPECT_FALSE(p.has_rational());
  p = ParseMatrixJson(
      R"({"k": 2, "entries": [[0.1, 0.9], [0.9, 0.1]], "rational": [["1/10", "9/10"], ["9/10", "1/10"]]})");
  ASSERT_TRUE(p.has_rational());
  EXPECT_EQ(p.rational(0, 0), Rational(1, 10));
  const auto back = ParseMatrixJson(MatrixToJson(p).dump());
  EXPECT_EQ(back.rational(1, 0), Rational(9, 10));
  EXPECT_EQ(back.entries(), p.entries());
}

TEST(MatrixJson, ErrorsNameTheProblem) {
  const auto message = [](const std::string& text) {
    try {
      ParseMatrixJson(text);
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_THAT(message(R"({"k": 2, "entries": [[0.9, 0.5], [0.6, 0.3]]})"), HasSubstr("(0,1)"));
  EXPECT_THAT(message(R"({"k": 2, "entries": [[0.9, "x"], [0.6, 0.3]]})"), HasSubstr("(0,1)"));
  EXPECT_THAT(message(R"({"k": 3, "entries": [[0.9, 0.5], [0.5, 0.3]]})"), HasSubstr("k = 3"));
  EXPECT_THAT(message(R"({"k": 2, "entries": [[0.9, 0.5], [0.5]]})"), HasSubstr("row 1"));
  EXPECT_THAT(message(R"({"entries": []})"), HasSubstr("\"k\""));
  EXPECT_THAT(message("{"), HasSubstr("JSON"));
  EXPECT_THAT(message(R"({"k": 1, "entries": [[0.5]], "rational": [["1/3"]]})"), HasSubstr("(0,0)"));
}

SampledGraph Example() {
  return SampledGraph{2, 3, 8, {{0, 1}, {0, 7}, {3, 5}}, 12345678901234ull, SamplerId::kGrasshop};
}

TEST(Edges, TextRoundTrip) {
  std::stringstream ss;
  WriteEdgesText(ss, Example());
  EXPECT_EQ(ss.str(), "# skg-edges v1\n# k=2 t=3 n=8 seed=12345678901234\n0 1\n0 7\n3 5\n");
  const auto g = ReadEdges(ss);
  EXPECT_EQ(g.edges, Example().edges);
  EXPECT_EQ(g.seed, Example().seed);
  EXPECT_EQ(g.n, 8u);
  EXPECT_EQ(g.t, 3);
}

TEST(Edges, BinaryRoundTrip) {
  std::stringstream ss;
  WriteEdgesBinary(ss, Example());
  const std::string bytes = ss.str();
  ASSERT_EQ(bytes.size(), 4 + 5 * 8 + 3 * 16u);
  EXPECT_EQ(bytes.substr(0, 4), "SKG1");
  EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 2);  // k, little-endian
  EXPECT_EQ(static_cast<unsigned char>(bytes[36]), 3);  // edge_count
  const auto g = ReadEdges(ss);
  EXPECT_EQ(g.edges, Example().edges);
  EXPECT_EQ(g.k, 2);
}

TEST(Edges, RejectsMalformedInput) {
  std::stringstream bad_header("hello\n");
  EXPECT_THROW(ReadEdges(bad_header), ValidationError);
  std::stringstream bad_edge("# skg-edges v1\n# k=2 t=1 n=2 seed=0\n1 0\n");
  EXPECT_THROW(ReadEdges(bad_edge), ValidationError);
  std::stringstream bad_token("# skg-edges v1\n# k=2 t=1 n=2 seed=0\n0 x\n");
  EXPECT_THROW(ReadEdges(bad_token), ValidationError);
  std::stringstream truncated(std::string("SKG1\x02\0\0", 7));
  EXPECT_THROW(ReadEdges(truncated), ValidationError);
}

TEST(Report, JsonShape) {
  const auto r = Classify(GeneratorMatrix::FromRows({{0.9, 0.6}, {0.6, 0.3}}));
  const auto j = ReportToJson(r);
  EXPECT_EQ(j["case_ids"], nlohmann::json({4, 5}));
  EXPECT_EQ(j["component_regime"], "GIANT");
  EXPECT_EQ(j["connectivity_regime"], "MANY_ISOLATED");
  EXPECT_EQ(j["flags"]["prod_c"], ">");
  EXPECT_EQ(j["tolerance_mode"]["mode"], "float");
  EXPECT_TRUE(j["params"]["eps_max"].is_number());
  const auto eq = ReportToJson(Classify(GeneratorMatrix::FromRows({{1, 1}, {1, 1}})));
  EXPECT_EQ(eq["params"]["eps_max"], "inf");
}

}  // namespace
}  // namespace skg
