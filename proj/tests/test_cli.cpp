#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>

#include "gsi/model.hpp"
#include "gsi/report.hpp"
#include "support.hpp"

using namespace gsi;
using json = nlohmann::json;

namespace {

struct BinaryRun {
  std::string out;
  int code;
};

BinaryRun run_binary(const std::string& args) {
  std::string cmd = std::string(GSI_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {"", -1};
  std::string out;
  std::array<char, 4096> buf{};
  for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), pipe)) > 0;) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {out, WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

json command(const std::string& cmd, const std::string& model, CommandConfig cfg = {}) {
  CommandResult r = run_command(cmd, test::load(model), cfg);
  EXPECT_EQ(r.exit_code, 0) << r.text;
  return json::parse(r.text);
}

}  // namespace

TEST(ParseModel, RunningExample) {
  Model m = test::load("running.model");
  EXPECT_FALSE(m.abstract);
  EXPECT_EQ(m.quiver.num_vertices(), 5u);
  EXPECT_EQ(m.quiver.num_arrows(), 7u);
  ASSERT_TRUE(m.coloring);
  EXPECT_EQ(m.coloring->num_colors(), 3u);
  EXPECT_EQ(m.beta(), (DimensionVector{2, 6, 2, 4, 2}));
  EXPECT_EQ(*m.rank(), RankSequence(7, 2));
}

TEST(ParseModel, RelationsOnlyDerivesColoring) {
  Model m = test::load("running_rel.model");
  EXPECT_FALSE(m.coloring);
  ASSERT_TRUE(m.relations);
  EXPECT_EQ(test::coloring_of(m), *test::load("running.model").coloring);
}

TEST(ParseModel, Errors) {
  auto message = [](const std::string& text) {
    try {
      parse_model(text);
    } catch (const input_error& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_EQ(message(""), "no vertices");
  EXPECT_NE(message("vertex 1\nvertex 1\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("vertex 1\narrow a 1 2 color s\n").find("unknown vertex"), std::string::npos);
  EXPECT_NE(message("vertex 1\nvertex 2\narrow a 1 2 color s\narrow a 1 2 color s\n")
                .find("duplicate arrow"),
            std::string::npos);
  EXPECT_NE(message("vertex 1\nbogus\n").find("unknown keyword"), std::string::npos);
  EXPECT_NE(message("vertex 1\nbeta 1 -2\n").find("nonnegative"), std::string::npos);
  EXPECT_NE(message("vertex 1\nvars x\n").find("either"), std::string::npos);
  EXPECT_NE(message("vertex 1\nvertex 2\narrow a 1 2\n").find("colors or relations"),
            std::string::npos);
  EXPECT_NE(message("eq 1: x = y\neq 1: y = z\n").find("duplicate equation"), std::string::npos);
}

TEST(ParseModel, OrderInsensitive) {
  Model a = parse_model("vertex 1\nvertex 2\narrow a 1 2 color s\nbeta 1 2\nbeta 2 2\n");
  Model b = parse_model("beta 2 2\narrow a 1 2 color s\n# comment\nbeta 1 2\nvertex 1\nvertex 2\n");
  EXPECT_EQ(a.beta(), b.beta());
  EXPECT_EQ(*a.coloring, *b.coloring);
}

TEST(RunCommand, Components) {
  json out = command("components", "path111.model");
  EXPECT_EQ(out["components"], json::parse(R"([{"r":{"a1":1,"a2":0}},{"r":{"a1":0,"a2":1}}])"));
}

TEST(RunCommand, CoverAndColor) {
  json cover = command("cover", "cover.model");
  EXPECT_EQ(cover["kernel"], json::array({"b3a2"}));
  json color = command("color", "running_rel.model");
  EXPECT_EQ(color["ideal"], json::array({"a2a1", "b2b1", "b3b2", "c2c1"}));
}

TEST(RunCommand, Degrees) {
  json out = command("degrees", "running.model");
  EXPECT_EQ(out["bounds"][0]["generators"], 42);
  EXPECT_EQ(out["bounds"][0]["relations"], 168);
}

TEST(RunCommand, VerifyClosingExample) {
  json out = command("verify", "closing.model");
  EXPECT_EQ(out["cap"], 3);
  EXPECT_TRUE(out["generators_match"].get<bool>());
  EXPECT_TRUE(out["relations_match"].get<bool>());
  EXPECT_TRUE(out["witnesses"].empty());
}

TEST(RunCommand, VerifyQuiverModel) {
  json out = command("verify", "running.model");
  for (const json& c : out["components"]) {
    EXPECT_TRUE(c["generators_match"].get<bool>());
    EXPECT_TRUE(c["relations_match"].get<bool>());
    EXPECT_TRUE(c["si_equations_match"].get<bool>());
  }
}

TEST(RunCommand, ClosingExampleCounts) {
  EXPECT_EQ(command("generators", "closing.model")["generators"].size(), 8u);
  EXPECT_EQ(command("relations", "closing.model")["relations"].size(), 2u);
}

TEST(RunCommand, ErrorsBecomeJsonWithExitCode) {
  CommandResult r = run_command("peg", test::load("closing.model"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(json::parse(r.text)["error"]["kind"], "input");
  r = run_command("nonsense", test::load("running.model"));
  EXPECT_EQ(r.exit_code, 1);
  Model bad = parse_model("vertex 1\nvertex 2\narrow a 1 2 color s\nbeta 1 1\nbeta 2 1\nrank a 2\n");
  r = run_command("peg", bad);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(json::parse(r.text)["error"]["kind"], "precondition");
}

TEST(Binary, GoldenDot) {
  BinaryRun r = run_binary("peg " + test::data_path("running.model") + " --dot");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, test::read_file(test::data_path("golden/running.dot")));
  std::istringstream lines(r.out);
  std::size_t nodes = 0;
  for (std::string line; std::getline(lines, line);) {
    nodes += line.find("->") == std::string::npos && line.find("\";") != std::string::npos;
  }
  EXPECT_EQ(nodes, 22u);
}

TEST(Binary, GoldenPresentation) {
  BinaryRun r = run_binary("presentation " + test::data_path("running.model"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, test::read_file(test::data_path("golden/running_presentation.json")));
  json out = json::parse(r.out);
  EXPECT_EQ(out["components"][0]["bounds"]["generators"], 42);
  EXPECT_EQ(out["components"][0]["bounds"]["relations"], 168);
}

TEST(Binary, ByteIdenticalReruns) {
  for (const char* cmd : {"presentation", "verify", "peg"}) {
    std::string args = std::string(cmd) + " " + test::data_path("running.model");
    EXPECT_EQ(run_binary(args).out, run_binary(args).out) << cmd;
  }
}

TEST(Binary, StdinAndExitCodes) {
  BinaryRun ok = run_binary("components - < " + test::data_path("path111.model"));
  EXPECT_EQ(ok.code, 0);
  BinaryRun empty = run_binary("validate /dev/null");
  EXPECT_EQ(empty.code, 1);
  EXPECT_EQ(json::parse(empty.out)["error"]["message"], "no vertices");
  BinaryRun missing = run_binary("validate /nonexistent/model");
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(run_binary("").code, 0);
}

TEST(Binary, KeysAreSorted) {
  BinaryRun r = run_binary("presentation " + test::data_path("closing.model"));
  json out = json::parse(r.out);
  std::vector<std::string> keys;
  for (auto it = out.begin(); it != out.end(); ++it) keys.push_back(it.key());
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
}
