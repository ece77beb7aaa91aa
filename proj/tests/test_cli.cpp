#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"

using namespace relproj;
using namespace relproj::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "relproj");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string input(const std::string& name) {
  const char* dir = std::getenv("RELPROJ_INPUTS");
  return (fs::path(dir ? dir : "inputs") / name).string();
}

std::string write_temp(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / ("relproj_cli_" + name);
  std::ofstream(p) << content;
  return p.string();
}

}  // namespace

TEST(Cli, TransitionOnProjectiveLine) {
  const Outcome o = invoke({"--format", "json", "proj", "transition", "--n", "1", "--from", "0", "--to", "1", "--coords", "2"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = json::parse(o.out);
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["data"]["coords"], json::array({"1/2"}));
  EXPECT_EQ(j["data"]["chart"], 1);
}

TEST(Cli, SampleInputsHaveExpectedExitCodes) {
  const std::vector<std::pair<std::vector<std::string>, int>> cases{
      {{"axioms", input("octonion_cochain.json")}, 0},
      {{"axioms", input("super_category.json")}, 0},
      {{"ideal", input("ideal_q3.json")}, 0},
      {{"localize", input("localize_q3.json")}, 0},
      {{"cover", input("q3_cover.json")}, 0},
      {{"glue", input("q3_glue.json")}, 0},
      {{"line", input("odd_line.json")}, 0},
      {{"proj", "verify", input("point_q.json")}, 0},
      {{"proj", "verify", input("point_not_line.json")}, 1},
      {{"proj", "chart", input("point_q_components.json")}, 0},
      {{"proj", "dualize", input("point_q_epi.json")}, 0},
      {{"proj", "glue", input("proj_glue_q2.json")}, 0},
      {{"algebra", "Q[eps]"}, 0},
  };
  for (const auto& [args, expected] : cases) {
    const Outcome o = invoke(args);
    EXPECT_EQ(o.code, expected) << args.back() << "\n" << o.out << o.err;
  }
}

TEST(Cli, OddLineReportsSignature) {
  const Outcome o = invoke({"--format", "json", "line", input("odd_line.json")});
  ASSERT_EQ(o.code, 0);
  const auto j = json::parse(o.out);
  EXPECT_EQ(j["data"]["invertible"], true);
  EXPECT_EQ(j["data"]["line_object"], false);
  EXPECT_EQ(j["data"]["signature"], json::array({"-1"}));
}

TEST(Cli, JsonIsByteDeterministic) {
  const std::vector<std::string> args{"--format", "json", "--seed", "9", "--samples", "5", "cover", input("q3_cover.json")};
  const Outcome a = invoke(args), b = invoke(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.find("elapsed"), std::string::npos);
  const auto j = json::parse(a.out);
  EXPECT_EQ(j["seed"], 9);
  EXPECT_EQ(j["samples"], 5);
}

TEST(Cli, TextReportCarriesTiming) {
  const Outcome o = invoke({"axioms", input("super_category.json")});
  EXPECT_NE(o.out.find("elapsed:"), std::string::npos);
  EXPECT_NE(o.out.find("result: pass"), std::string::npos);
}

TEST(Cli, InputErrorsExitWithTwo) {
  EXPECT_EQ(invoke({"line", "/nonexistent/file.json"}).code, 2);
  EXPECT_EQ(invoke({"line", write_temp("broken.json", "{ not json")}).code, 2);
  const Outcome f = invoke({"proj", "verify", write_temp("float.json", R"({"algebra": "Q", "n": 1, "mono": {"images": [[0.5, 1]]}})")});
  EXPECT_EQ(f.code, 2);
  EXPECT_NE(f.err.find("mono"), std::string::npos) << f.err;
  const Outcome c = invoke({"axioms", write_temp("zero.json", R"({"group": [2], "cochain": {"entries": [["1","1"],["1","0"]]}})")});
  EXPECT_EQ(c.code, 2);
  EXPECT_NE(c.err.find("cochain"), std::string::npos) << c.err;
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"--format", "yaml", "octonion"}).code, 2);
}

TEST(Cli, OutFileReceivesReport) {
  const std::string path = (fs::temp_directory_path() / "relproj_cli_out.json").string();
  fs::remove(path);
  const Outcome o = invoke({"--format", "json", "--out", path, "axioms", input("super_category.json")});
  EXPECT_EQ(o.code, 0);
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(path);
  EXPECT_EQ(json::parse(in)["status"], "pass");
}

TEST(Cli, WorkspaceTasksRunInOrder) {
  const std::string ws = write_temp("tasks.json", R"({
    "objects": {"k": "Q", "p": {"algebra": "k", "n": 1, "chart": 0, "coords": ["3"]}},
    "tasks": [{"command": "proj", "sub": "chart", "input": "p"},
              {"command": "algebra", "input": "k"}]})");
  const Outcome o = invoke({"--format", "json", "suite", ws});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = json::parse(o.out);
  ASSERT_EQ(j["data"]["tasks"].size(), 2u);
  EXPECT_EQ(j["data"]["tasks"][0]["suite"], "proj chart");
}

TEST(Cli, WorkspaceReferenceCycleIsAnInputError) {
  Workspace ws(json::parse(R"({"objects": {"a": "b", "b": "a"}})"));
  EXPECT_THROW(ws.algebra(json("a"), "input"), InputError);
}

TEST(Cli, RationalParsing) {
  EXPECT_EQ(rational_from(json("-6/4"), "x"), Q(-3, 2));
  EXPECT_EQ(rational_from(json(12345678901234LL), "x"), Q(mpz_class("12345678901234")));
  EXPECT_THROW(rational_from(json(0.25), "x"), InputError);
  EXPECT_THROW(rational_from(json("1/0"), "x"), InputError);
}
