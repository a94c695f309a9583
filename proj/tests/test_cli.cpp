#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace {

using json = nlohmann::ordered_json;

const std::string kCli = CREMONA_CLI_PATH;
const std::string kFixtures = CREMONA_FIXTURE_DIR;

struct CliRun {
  int code = -1;
  std::string out;
};

// Runs the CLI through the shell from the fixture directory; stderr is dropped.
CliRun run(const std::string& args) {
  const std::string cmd = "cd '" + kFixtures + "' && '" + kCli + "' " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct Case {
  std::string name;
  int exit = 0;
  std::string args;
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::vector<Case> manifest() {
  std::ifstream in(kFixtures + "/corpus.txt");
  std::vector<Case> cases;
  for (std::string line; std::getline(in, line);) {
    if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
    if (trim(line).empty()) continue;
    std::vector<std::string> cols;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, '|');) cols.push_back(trim(c));
    if (cols.size() == 3) cases.push_back({cols[0], std::stoi(cols[1]), cols[2]});
  }
  return cases;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, ManifestIsNonTrivial) {
  const auto cases = manifest();
  EXPECT_GE(cases.size(), 40u);
  int errors = 0, usage = 0;
  for (const auto& c : cases) {
    errors += c.exit == 1;
    usage += c.exit == 2;
  }
  EXPECT_GE(errors, 1);
  EXPECT_GE(usage, 1);
}

TEST(Cli, CorpusMatchesGoldenOutputs) {
  for (const auto& c : manifest()) {
    const CliRun r = run(c.args);
    EXPECT_EQ(r.code, c.exit) << c.name;
    const std::string golden = kFixtures + "/golden/" + c.name + ".out";
    if (std::ifstream(golden).good()) {
      EXPECT_EQ(r.out, slurp(golden)) << c.name;
    }
  }
}

TEST(Cli, JsonEnvelope) {
  for (const auto& c : manifest()) {
    if (c.exit == 2) continue;
    const std::string args = c.args.rfind("--json", 0) == 0 ? c.args : "--json " + c.args;
    const CliRun r = run(args);
    ASSERT_EQ(r.code, c.exit) << c.name;
    json j;
    ASSERT_NO_THROW(j = json::parse(r.out)) << c.name << "\n" << r.out;
    ASSERT_TRUE(j.is_object()) << c.name;
    ASSERT_TRUE(j.contains("status") && j.contains("result") && j.contains("witness")) << c.name;
    if (c.exit == 0) {
      EXPECT_EQ(j["status"], "ok") << c.name;
      EXPECT_FALSE(j["result"].is_null()) << c.name;
      EXPECT_FALSE(j.contains("error")) << c.name;
    } else {
      EXPECT_EQ(j["status"], "error") << c.name;
      EXPECT_TRUE(j["result"].is_null()) << c.name;
      EXPECT_TRUE(j["witness"].is_null()) << c.name;
      ASSERT_TRUE(j.contains("error")) << c.name;
      EXPECT_TRUE(j["error"]["code"].is_string()) << c.name;
      EXPECT_TRUE(j["error"]["message"].is_string()) << c.name;
    }
  }
}

TEST(Cli, ParseErrorCarriesSpan) {
  const CliRun r = run("--json genus -c \"F = x^2 + w\"");
  EXPECT_EQ(r.code, 1);
  const json j = json::parse(r.out);
  ASSERT_TRUE(j["error"].contains("span"));
  const std::size_t start = j["error"]["span"]["start"], end = j["error"]["span"]["end"];
  EXPECT_EQ(std::string("F = x^2 + w").substr(start, end - start), "w");
}

TEST(Cli, ComposeWitnessIsTheCancelledFactor) {
  const json j = json::parse(run("--json compose -a maps/tau.map -b maps/tau.map").out);
  EXPECT_EQ(j["result"]["degree"], 1);
  EXPECT_EQ(j["witness"]["cancelled"], "x*y*z");
}

TEST(Cli, DegreeSequenceJson) {
  const json j = json::parse(run("--json degseq -m maps/tau.map -n 6").out);
  EXPECT_EQ(j["result"]["method"], "exact");
  ASSERT_EQ(j["result"]["entries"].size(), 6u);
  EXPECT_EQ(j["result"]["entries"][0]["deg"], 2);
  EXPECT_EQ(j["result"]["entries"][1]["deg"], 1);
  const json m = json::parse(run("--json --modular degseq -m maps/tau.map -n 6").out);
  EXPECT_EQ(m["result"]["method"], "modular");
  EXPECT_EQ(m["result"]["primes"].size(), 2u);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("nosuchcommand").code, 2);
  EXPECT_EQ(run("compose -a maps/tau.map").code, 2);
  EXPECT_EQ(run("power -m maps/tau.map -n notanumber").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, DomainErrors) {
  EXPECT_EQ(run("compose -a maps/no_such.map -b maps/tau.map").code, 1);
  EXPECT_EQ(run("apply -m maps/tau.map -q 0,0,0").code, 1);
  EXPECT_EQ(run("power -m \"x; y^2; z\" -n 2").code, 1);
}

TEST(Cli, CorpusCommand) {
  const CliRun r = run("corpus -f corpus.txt");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("passed"), std::string::npos);
}
