#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

const std::string CLI = COHOMONE_CLI;
const std::string SRC = COHOMONE_SOURCE_DIR;

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + CLI + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string diagram(const std::string& name) { return SRC + "/diagrams/" + name; }

}  // namespace

TEST(Cli, VerifyExitCodes) {
  auto ok = run("verify " + diagram("b7.diagram"));
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_NE(ok.out.find("checks:"), std::string::npos);
  EXPECT_EQ(run("verify " + diagram("e1.diagram") + " " + diagram("q2.diagram") + " --workers 2").code, 0);
  auto bad = run("verify " + diagram("nonprimitive.diagram"));
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("first fail: linear_primitivity"), std::string::npos) << bad.out;
  EXPECT_EQ(run("verify " + diagram("not_a_sphere.diagram")).code, 1);
  auto parse = run("verify " + diagram("malformed.diagram"));
  EXPECT_EQ(parse.code, 2);
  EXPECT_NE(parse.out.find("Kzero"), std::string::npos);
  EXPECT_EQ(run("verify /nonexistent.diagram").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST(Cli, VerifyStructuredOutputParses) {
  auto r = run("verify --format json " + diagram("b13.diagram"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("\"verdicts\""), std::string::npos);
}

TEST(Cli, StrictTurnsInconclusiveIntoFailure) {
  // B13 is data-only: some checks stay inconclusive
  auto lax = run("verify " + diagram("b13.diagram"));
  EXPECT_EQ(lax.code, 0) << lax.out;
  if (lax.out.find("inconclusive;") != std::string::npos && lax.out.find(" 0 inconclusive") == std::string::npos)
    EXPECT_EQ(run("verify --strict " + diagram("b13.diagram")).code, 1);
}

TEST(Cli, Enumerate) {
  auto r = run("enumerate --max-slope 3 --golden " + SRC + "/data/golden/enumerate_3.json");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("golden"), std::string::npos);
  EXPECT_NE(r.out.find("B7"), std::string::npos);
  EXPECT_EQ(run("enumerate --max-slope 1000").code, 2);
  EXPECT_EQ(run("enumerate --max-slope 3 --golden " + SRC + "/data/golden/enumerate_5.json").code, 1);
}

TEST(Cli, TablesAndRows) {
  auto r = run("tables");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("43/43 rows verified"), std::string::npos) << r.out;
  EXPECT_EQ(run("tables --row Table5/B7 --row Table5/Qk?k=2").code, 0);
  EXPECT_EQ(run("tables --row Table5/nope").code, 2);
}

TEST(Cli, SpotcheckAndInspect) {
  auto r = run("spotcheck");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("contradictions confirmed"), std::string::npos);
  EXPECT_EQ(run("spotcheck no-such-case").code, 2);
  auto i = run("inspect " + diagram("b7.diagram"));
  EXPECT_EQ(i.code, 0) << i.out;
  EXPECT_NE(i.out.find("W = D3"), std::string::npos) << i.out;
  EXPECT_EQ(run("inspect Table5/B13 --format json").code, 0);
}

TEST(Cli, ChecksumMismatchExitsThree) {
  fs::path tmp = fs::temp_directory_path() / ("cohomone_data_" + std::to_string(::getpid()));
  fs::remove_all(tmp);
  fs::copy(SRC + "/data", tmp, fs::copy_options::recursive);
  EXPECT_EQ(run("tables --row Table5/B7", "COHOMONE_DATA_DIR=" + tmp.string()).code, 0);
  {
    std::ofstream f(tmp / "table5.json", std::ios::app);
    f << " ";
  }
  auto r = run("tables", "COHOMONE_DATA_DIR=" + tmp.string());
  EXPECT_EQ(r.code, 3) << r.out;
  EXPECT_EQ(run("verify " + diagram("b7.diagram"), "COHOMONE_DATA_DIR=" + tmp.string()).code, 3);
  fs::remove_all(tmp);
}
