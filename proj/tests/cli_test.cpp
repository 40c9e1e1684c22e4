#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "whilep/cli.hpp"

using namespace whilep;

namespace {

namespace fs = std::filesystem;

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("whilep_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

const char* const kMotivating = "x := cons(3,4); y := [x]; i := 10; [i] := 7; z := y + 1\n";

}  // namespace

TEST_F(Cli, RunPrintsTheFinalState) {
  Invocation r = cli({"run", file("p.wp", "x := 1")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "x = 1\n");
}

TEST_F(Cli, RunWithInitialValuesAndHeap) {
  Invocation r = cli({"run", file("p.wp", "y := x + 1; p := cons(y)"), "--init", "x=3"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "p = addr(1,1,1)\nx = 3\ny = 4\naddr(1,1,1) = 4\n");
}

TEST_F(Cli, RunReportsAbortAndFuel) {
  Invocation a = cli({"run", file("a.wp", kMotivating)});
  EXPECT_EQ(a.code, kExitFailure);
  EXPECT_EQ(a.out, "abort\n");
  Invocation f = cli({"run", file("f.wp", "while true do { skip }"), "--fuel", "20"});
  EXPECT_EQ(f.code, kExitFailure);
  EXPECT_EQ(f.out, "out of fuel\n");
}

TEST_F(Cli, SyntaxErrorsShowTheirPosition) {
  std::string p = file("bad.wp", "skip;\nx := [");
  Invocation r = cli({"run", p});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_EQ(r.err.rfind(p + ":2:", 0), 0u) << r.err;
}

TEST_F(Cli, OptimizeTheMotivatingProgram) {
  std::string p = file("motivating.wp", kMotivating);
  Invocation r = cli({"optimize", p, "--live", "y", "--emit", path("out.wp"), "--cert", path("c.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "x := cons(3, 4); y := [x]; skip; skip; skip\n");
  EXPECT_EQ(slurp(path("out.wp")), r.out);
  Invocation run = cli({"run", path("out.wp")});
  EXPECT_EQ(run.code, kExitOk);
  EXPECT_NE(run.out.find("y = 3\n"), std::string::npos);
}

TEST_F(Cli, CheckCertAcceptsItsOwnOutput) {
  std::string p = file("motivating.wp", kMotivating);
  ASSERT_EQ(cli({"optimize", p, "--live", "y", "--cert", path("c.json")}).code, kExitOk);
  Invocation r = cli({"check-cert", p, path("c.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "Accept\n");
}

TEST_F(Cli, CheckCertRejectsATamperedNode) {
  std::string p = file("motivating.wp", kMotivating);
  ASSERT_EQ(cli({"optimize", p, "--live", "y", "--cert", path("c.json")}).code, kExitOk);
  auto doc = nlohmann::json::parse(slurp(path("c.json")));
  doc["derivation"]["premises"][1]["premises"][1]["premises"][1]["premises"][0]["rule"] = "mut_d2";
  std::ofstream(path("t.json")) << doc.dump(1);
  Invocation r = cli({"check-cert", p, path("t.json")});
  EXPECT_EQ(r.code, kExitReject);
  EXPECT_EQ(r.out.rfind("Reject at root.1.1.1.0: ", 0), 0u) << r.out;
}

TEST_F(Cli, CheckCertRejectsMalformedInput) {
  std::string p = file("motivating.wp", kMotivating);
  Invocation r = cli({"check-cert", p, file("c.json", "{\"format\": 1}")});
  EXPECT_EQ(r.code, kExitReject);
  EXPECT_NE(r.out.find("$.format"), std::string::npos) << r.out;
}

TEST_F(Cli, AnalyzeCommands) {
  std::string p = file("motivating.wp", kMotivating);
  Invocation pts = cli({"analyze", "pts", p, "--out", path("pts.json")});
  EXPECT_EQ(pts.code, kExitOk);
  auto records = nlohmann::json::parse(slurp(path("pts.json")));
  ASSERT_TRUE(records.is_array());
  EXPECT_EQ(records[0]["path"], "root");
  Invocation live = cli({"analyze", "live", p, "--live", "y"});
  EXPECT_EQ(live.code, kExitOk);
  EXPECT_NE(live.out.find("live after  [\"y\"]"), std::string::npos) << live.out;
}

TEST_F(Cli, StripDeadConsWarns) {
  Invocation r = cli({"optimize", file("p.wp", "x := cons(1, 2); y := 3"), "--live", "y", "--strip-dead-cons"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "skip; y := 3\n");
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(cli({"optimize", file("p.wp", "skip")}).code, kExitUsage);
  EXPECT_EQ(cli({"run", path("missing.wp")}).code, kExitUsage);
  EXPECT_EQ(cli({"run", file("q.wp", "skip"), "--fuel", "0"}).code, kExitUsage);
  EXPECT_EQ(cli({"analyze", "pts", file("r.wp", "skip"), "--widen", "0"}).code, kExitUsage);
}

TEST_F(Cli, OutputIsDeterministic) {
  std::string p = file("motivating.wp", kMotivating);
  Invocation a = cli({"optimize", p, "--live", "y", "--cert", path("a.json")});
  Invocation b = cli({"optimize", p, "--live", "y", "--cert", path("b.json")});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  Invocation s1 = cli({"test-soundness", "--trials", "20", "--seed", "4"});
  Invocation s2 = cli({"test-soundness", "--trials", "20", "--seed", "4"});
  EXPECT_EQ(s1.code, kExitOk);
  EXPECT_EQ(s1.out, s2.out);
}
