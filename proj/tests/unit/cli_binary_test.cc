// Drives the installed-style executable end to end.
#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tlpulse/optimize.hpp"

namespace {

struct Output {
  int status;
  std::string out;
};

Output run(const std::string& args) {
  const std::string cmd = std::string(TLPULSE_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, {}};
  std::string text;
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) text.append(buf, n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, text};
}

// (t, P_e) columns of a simulate CSV.
tlpulse::Trajectory read_trajectory(const std::string& csv) {
  tlpulse::Trajectory tr;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#' || line[0] == 't') continue;
    std::istringstream cells(line);
    std::string t;
    std::string pe;
    std::getline(cells, t, ',');
    std::getline(cells, pe, ',');
    tr.times.push_back(std::stod(t));
    tr.pe.push_back(std::stod(pe));
  }
  return tr;
}

std::vector<double> last_row(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::string last;
  while (std::getline(in, line)) {
    if (!line.empty()) last = line;
  }
  std::vector<double> v;
  std::istringstream cells(last);
  for (std::string c; std::getline(cells, c, ',');) v.push_back(std::stod(c));
  return v;
}

TEST(CliBinaryTest, RisingExponentialReachesNearUnity) {
  const Output o = run("simulate --shape rising-exp --bandwidth 1.0 --state fock --lambda full");
  ASSERT_EQ(o.status, 0);
  const auto tr = read_trajectory(o.out);
  ASSERT_GT(tr.pe.size(), 100u);
  EXPECT_NEAR(*std::max_element(tr.pe.begin(), tr.pe.end()), 0.995, 0.005);
}

TEST(CliBinaryTest, ZeroCouplingGivesZeroColumn) {
  const Output o = run("simulate --shape gaussian --bandwidth 1.5 --state fock --lambda-frac 0");
  ASSERT_EQ(o.status, 0);
  const auto tr = read_trajectory(o.out);
  ASSERT_FALSE(tr.pe.empty());
  for (double p : tr.pe) EXPECT_EQ(p, 0.0);
}

TEST(CliBinaryTest, StrongCoherentPulseOscillates) {
  const Output o = run("simulate --shape gaussian --bandwidth 2.4 --state coherent --n 50 --lambda full");
  ASSERT_EQ(o.status, 0);
  EXPECT_GE(tlpulse::count_local_maxima(read_trajectory(o.out)), 2u);
}

TEST(CliBinaryTest, LambdaExamples) {
  Output o = run("lambda --cone-deg 134");
  ASSERT_EQ(o.status, 0);
  EXPECT_NEAR(last_row(o.out).at(1), 0.94, 0.005);
  o = run("lambda --full");
  ASSERT_EQ(o.status, 0);
  EXPECT_EQ(last_row(o.out).at(1), 1.0);
  o = run("lambda --cone-deg 180");
  ASSERT_EQ(o.status, 0);
  EXPECT_EQ(last_row(o.out).at(1), 1.0);
}

TEST(CliBinaryTest, OutputIsByteIdenticalAcrossRunsAndTargets) {
  const std::string args = "sweep --shape gaussian --bandwidth 2.4 --n 1,10,50";
  const Output a = run(args);
  const Output b = run(args);
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);

  const auto path = std::filesystem::temp_directory_path() / "tlpulse_cli_binary_test.csv";
  ASSERT_EQ(run(args + " --out " + path.string()).status, 0);
  std::ifstream file(path, std::ios::binary);
  const std::string written((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
  EXPECT_EQ(written, a.out);
  std::filesystem::remove(path);
}

TEST(CliBinaryTest, ExitCodes) {
  EXPECT_EQ(run("--help").status, 0);
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("simulate --shape gaussian --bandwidth 1 --unknown").status, 2);
  EXPECT_EQ(run("simulate --shape gaussian --bandwidth -3").status, 2);
  EXPECT_EQ(run("lambda --lambda full --cone-deg 30").status, 2);
  EXPECT_EQ(run("lambda --full --out /nonexistent-dir/x.csv").status, 1);
}

}  // namespace
