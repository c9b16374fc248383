#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ecvx/report.hpp"

using namespace ecvx;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string fixture(const std::string& name) { return std::string(ECVX_FIXTURE_DIR) + "/" + name; }

const char* kSmall = R"({
  "functions": [
    {"id": "f", "pieces": [{"interval": {"lo": "-inf", "lo_closed": false, "hi": "inf", "hi_closed": false},
                            "coeffs": ["1/3", 0.5, "2"]}]},
    {"id": "g", "pieces": [{"interval": {"lo": "0", "lo_closed": true, "hi": "1", "hi_closed": false},
                            "coeffs": []}]}
  ],
  "objective": {"f": "f", "g": "g"}
})";

std::optional<ErrorCode> code_of(const std::string& text, bool build = false) {
  try {
    ProblemFile pf = parse_problem(text);
    if (build) to_problem(pf);
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

std::string message_of(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  s.replace(s.find(from), from.size(), to);
  return s;
}

}  // namespace

TEST(ProblemIO, FixtureFilesRoundTrip) {
  int n = 0;
  for (const auto& e : std::filesystem::directory_iterator(ECVX_FIXTURE_DIR)) {
    if (e.path().extension() != ".json") continue;
    ++n;
    std::string text = slurp(e.path().string());
    ProblemFile a = parse_problem(text);
    EXPECT_EQ(serialize(a), text) << e.path();
    EXPECT_TRUE(parse_problem(serialize(a)) == a) << e.path();
    EXPECT_NO_THROW(to_problem(a)) << e.path();
  }
  EXPECT_GE(n, 7);
}

TEST(ProblemIO, FixtureFilesMatchBuiltIns) {
  auto same_data = [](const ProblemFile& a, const ProblemFile& b) {
    return a.functions == b.functions && a.constraints == b.constraints && a.f_id == b.f_id && a.g_id == b.g_id;
  };
  EXPECT_TRUE(same_data(load_problem_file(fixture("example1.json")), to_file(fixtures::weak_duality())));
  EXPECT_TRUE(same_data(load_problem_file(fixture("set_b.json")), to_file(fixtures::econvex_necessity())));
  EXPECT_TRUE(same_data(load_problem_file(fixture("sets_ab.json")), to_file(fixtures::sets_ab())));
  EXPECT_TRUE(same_data(load_problem_file(fixture("section5.json")), to_file(fixtures::cubic())));
  DCProblem p = to_problem(load_problem_file(fixture("econvex_necessity.json")));
  EXPECT_EQ(p.cfg.zero_multiplier, ZeroMultiplier::Domain);
}

TEST(ProblemIO, Scalars) {
  ProblemFile pf = parse_problem(kSmall);
  const std::vector<double>& c = pf.functions[0].pieces[0].poly.coeffs();
  EXPECT_DOUBLE_EQ(c[0], 1.0 / 3);
  EXPECT_EQ(c[1], 0.5);
  EXPECT_EQ(c[2], 2.0);
  EXPECT_TRUE(parse_problem(serialize(pf)) == pf);
  EXPECT_EQ(fmt_double(0.1), "0.1");
  EXPECT_EQ(fmt_double(1.0 / 3), "0.3333333333333333");
  EXPECT_EQ(code_of(replace(kSmall, "\"1/3\"", "\"1/0\"")), ErrorCode::ParseError);
  EXPECT_EQ(code_of(replace(kSmall, "\"1/3\"", "\"abc\"")), ErrorCode::ParseError);
}

TEST(ProblemIO, RejectsUnknownKeysAndBadSyntax) {
  std::string extra = replace(kSmall, "\"objective\"", "\"typo\": 1, \"objective\"");
  EXPECT_EQ(code_of(extra), ErrorCode::ParseError);
  EXPECT_NE(message_of(extra).find("typo"), std::string::npos);
  std::string nested = replace(kSmall, "\"id\": \"g\"", "\"id\": \"g\", \"colour\": 2");
  EXPECT_NE(message_of(nested).find("/functions/1"), std::string::npos);
  std::string broken = replace(kSmall, "\"objective\": {", "\"objective\": {,");
  EXPECT_EQ(code_of(broken), ErrorCode::ParseError);
  EXPECT_NE(message_of(broken).find("line 8, column 17"), std::string::npos) << message_of(broken);
  EXPECT_EQ(code_of(replace(kSmall, "\"objective\": {\"f\": \"f\", \"g\": \"g\"}", "\"objective\": {\"f\": \"f\"}")),
            ErrorCode::ParseError);
}

TEST(ProblemIO, InvalidProblems) {
  // closed at an infinite end
  EXPECT_EQ(code_of(replace(kSmall, "\"lo_closed\": false", "\"lo_closed\": true"), true), ErrorCode::InvalidProblem);
  // concave f
  EXPECT_EQ(code_of(replace(kSmall, "\"2\"]", "\"-2\"]"), true), ErrorCode::InvalidProblem);
  // unknown function reference
  EXPECT_EQ(code_of(replace(kSmall, "{\"f\": \"f\"", "{\"f\": \"q\""), true), ErrorCode::InvalidProblem);
}

TEST(ProblemIO, ReportsAreDeterministic) {
  DCProblem p = to_problem(load_problem_file(fixture("affine.json")));
  std::string a = eval_report(p, "affine").str(), b = eval_report(p, "affine").str();
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("classification: strong-duality"), std::string::npos);
  EXPECT_NE(a.find("--- json ---"), std::string::npos);
}
