#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr discarded.
Run run(const std::string& args) {
  const std::string cmd = std::string(GFG_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Cli, Check) {
  const auto yes = run("check 1928");
  EXPECT_EQ(yes.code, 0);
  EXPECT_EQ(yes.out.rfind("EAC present", 0), 0u);
  EXPECT_NE(yes.out.find("eac_vertices=14"), std::string::npos);
  const auto no = run("check 100");
  EXPECT_EQ(no.code, 0);
  EXPECT_EQ(no.out.rfind("no EAC, residual=0", 0), 0u);
  EXPECT_EQ(run("check 7").code, 1);
  EXPECT_EQ(run("check").code, 1);
  EXPECT_EQ(run("bogus").code, 1);
}

TEST(Cli, Scan) {
  const auto r = run("scan 4 10000 --workers 2");
  EXPECT_EQ(r.code, 0);
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 6u);
  EXPECT_EQ(l[0].rfind("{\"n\":128,\"eac_vertex_count\":8,", 0), 0u);
  EXPECT_EQ(l[5].rfind("{\"n\":6142,\"eac_vertex_count\":10,", 0), 0u);
  const auto empty = run("scan 4 100");
  EXPECT_EQ(empty.code, 0);
  EXPECT_TRUE(empty.out.empty());
  EXPECT_EQ(run("scan 10 9").code, 1);
}

TEST(Cli, ScanCheckpointResume) {
  const auto cp = std::filesystem::temp_directory_path() / "gfg_cli_cp.txt";
  std::filesystem::remove(cp);
  const auto first = run("scan 4 3000 --block 500 --checkpoint " + cp.string());
  EXPECT_EQ(first.code, 0);
  EXPECT_TRUE(std::filesystem::exists(cp));
  const auto again = run("scan 4 3000 --checkpoint " + cp.string());
  EXPECT_EQ(again.code, 0);
  EXPECT_EQ(lines(again.out).size(), 5u);
  EXPECT_EQ(run("scan 4 4000 --checkpoint " + cp.string()).code, 1);
  std::filesystem::remove(cp);
}

TEST(Cli, Analyze) {
  const auto dir = std::filesystem::temp_directory_path() / "gfg_cli_analyze";
  std::filesystem::remove_all(dir);
  const auto r = run("analyze 128 --budget 50000 --out " + dir.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"n\": 128"), std::string::npos);
  for (const char* f : {"report.json", "gfg.dot", "eac.dot", "census.txt"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / "n=128" / f)) << f;
  }
  std::filesystem::remove_all(dir);
}

TEST(Cli, Paths) {
  const auto cycles = run("paths --hamiltonian-cycles --n 1928");
  EXPECT_EQ(cycles.code, 0);
  const auto l = lines(cycles.out);
  ASSERT_EQ(l.size(), 4u);
  EXPECT_EQ(l[0], "cycles=3");
  const auto ham = run("paths --hamiltonian-paths --eac --n 128");
  EXPECT_EQ(lines(ham.out).front(), "paths=5");
  const auto longest = run("paths --longest --n 128");
  EXPECT_EQ(lines(longest.out).front(), "length=11");
  EXPECT_EQ(lines(longest.out).at(1), "29 41 5 3 23 13 11 7 37 17 43");
  EXPECT_EQ(lines(run("paths --longest --eac --n 1718").out).front(), "length=28");
  EXPECT_EQ(run("paths --n 128").code, 1);
  EXPECT_EQ(run("paths --longest --hamiltonian-paths --n 128").code, 1);
}

TEST(Cli, Draw) {
  const auto r = run("draw --eac --n 6142 --seed 1");
  EXPECT_EQ(r.code, 0);
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 11u);
  EXPECT_EQ(l.back(), "crossings=1");
  EXPECT_EQ(r.out, run("draw --eac --n 6142 --seed 1").out);
}

TEST(Cli, Twin) {
  const auto r = run("twin --prime-limit 1000 --max-n 1000000000");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "13 3 3 7 2200\n");
}

TEST(Cli, ErrorExitCodes) {
  EXPECT_EQ(run("analyze 128 --budget 1000 --out /proc/gfg-nope").code, 3);
  EXPECT_EQ(run("scan 4 100 --out /nonexistent-dir/hits.jsonl").code, 3);
  EXPECT_EQ(run("check 1000000000000").code, 2);
}
