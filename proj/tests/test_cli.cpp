#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

std::filesystem::path scratch() {
  static const auto dir = [] {
    auto d = std::filesystem::temp_directory_path() / ("kabreg_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

CliResult run(const std::string& args, const std::string& env = "") {
  const auto out = scratch() / "stdout.txt";
  const std::string cmd = env + " " + KABREG_CLI_PATH + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::string write_file(const std::string& name, const std::string& text) {
  const auto path = scratch() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST(Cli, ConstructSmallest) {
  const CliResult r = run("construct 1 1 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"members\""), std::string::npos);
}

TEST(Cli, ConstructIsDeterministic) {
  EXPECT_EQ(run("construct 3 5 3").out, run("construct 3 5 3").out);
  EXPECT_EQ(run("construct 1 4 --exploratory --seed 9").out, run("construct 1 4 --exploratory --seed 9").out);
}

TEST(Cli, ConstructThenReport) {
  const CliResult c = run("construct 3 5 3");
  ASSERT_EQ(c.code, 0);
  const std::string doc = write_file("k35.json", c.out);
  const CliResult r = run("report " + doc + " --format csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("3,5,3,5,5,3,false,false,5,false,true"), std::string::npos) << r.out;
}

TEST(Cli, ConeDocument) {
  const CliResult c = run("construct 2 2 5");
  ASSERT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("\"n\": 5"), std::string::npos);
  const CliResult r = run("report " + write_file("k22p5.json", c.out) + " --format json");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"agree\": true"), std::string::npos);
}

TEST(Cli, OmittedCaseIsUnsupported) {
  EXPECT_EQ(run("construct 2 4 3").code, 2);
  EXPECT_EQ(run("construct 1 4 3").code, 2);
  EXPECT_EQ(run("construct 2 4 3 --exploratory").code, 2);
  EXPECT_EQ(run("construct 1 4 3 --exploratory").code, 0);
}

TEST(Cli, MalformedDocumentIsInputError) {
  EXPECT_EQ(run("report " + write_file("bad.json", "{\"p\": 5")).code, 1);
  EXPECT_EQ(run("report /nonexistent/file.json").code, 1);
  EXPECT_EQ(run("betti " + write_file("bad2.json", "[]")).code, 1);
}

TEST(Cli, BadFlagsAreInputErrors) {
  EXPECT_EQ(run("construct 1 1 --format xml").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("construct 1 1 --p 9").code, 1);
}

TEST(Cli, BettiCsv) {
  const std::string doc = write_file("k33.json", run("construct 3 3").out);
  const CliResult r = run("betti " + doc + " --format csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "i,0,1,2,3\n0,1,,,\n1,,1,1,\n2,,,,1\n");
}

TEST(Cli, BettiFromStdin) {
  const std::string doc = write_file("k11.json", run("construct 1 1").out);
  const CliResult r = run("betti --format csv < " + doc);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "i,0,1\n0,1,\n1,1,1\n2,,1\n");
}

TEST(Cli, VerifySmallGrid) {
  const CliResult r = run("verify-theorems --amax 3 --bmax 4 --max-lines 6 --format csv --jobs 2");
  EXPECT_EQ(r.code, 0) << r.out;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.find(',') == std::string::npos) continue;  // trailing messages
    std::vector<std::string> cells;
    std::istringstream cs(line);
    for (std::string c; std::getline(cs, c, ',');) cells.push_back(c);
    ASSERT_GE(cells.size(), 11u) << line;
    EXPECT_EQ(cells[10], "true") << line;
    ++rows;
  }
  EXPECT_EQ(rows, 10);
}

TEST(Cli, VerifyInjectedFault) { EXPECT_EQ(run("verify-theorems --inject-fault").code, 1); }

TEST(Cli, VerifyTimeCap) {
  EXPECT_EQ(run("verify-theorems --max-lines 10 --max-seconds 0.000000001").code, 4);
}

TEST(Cli, Caviglia) {
  const CliResult r = run("caviglia 4 2 --format csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("2,1,2,1,4,2,2,true,1,true"), std::string::npos) << r.out;
}

TEST(Cli, EnvironmentOverridesPrime) {
  const CliResult r = run("construct 1 1", "KABREG_P=101");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"p\": 101"), std::string::npos);
  EXPECT_EQ(run("construct 1 1 --p 103", "KABREG_P=101").out.find("\"p\": 103") != std::string::npos, true);
  EXPECT_EQ(run("construct 1 1", "KABREG_P=abc").code, 1);
}

TEST(Cli, OutFlagWritesFile) {
  const auto path = (scratch() / "written.json").string();
  EXPECT_EQ(run("construct 2 3 --out " + path).code, 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), run("construct 2 3").out);
}
