#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef LCLVOL_CLI
#error "LCLVOL_CLI must point at the command line binary"
#endif

namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int rc;
  std::string out;
};

CmdResult run(const std::string& args) {
  std::string cmd = std::string(LCLVOL_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t k = std::fread(buf, 1, sizeof buf, p)) out.append(buf, k);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("lclvol_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string path(const std::string& f) const { return (dir / f).string(); }
  std::string slurp(const std::string& f) const {
    std::ifstream in(path(f));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  void put(const std::string& f, const std::string& text) const { std::ofstream(path(f)) << text; }
  fs::path dir;
};

}  // namespace

TEST_F(Cli, GenSolveValidate) {
  ASSERT_EQ(run("gen complete-binary -p depth=4 -o " + path("t.inst")).rc, 0);
  ASSERT_EQ(run("solve -i " + path("t.inst") + " -s leafcolor-dist -o " + path("t.out")).rc, 0);
  EXPECT_EQ(run("validate -i " + path("t.inst") + " -O " + path("t.out") + " --problem leafcolor").rc, 0);
  // Flip the root's output: the root must copy a child, so the checker rejects it.
  std::string out = slurp("t.out");
  auto sp = out.find(' ');
  out[sp + 1] = out[sp + 1] == 'R' ? 'B' : 'R';
  put("bad.out", out);
  CmdResult r = run("validate -i " + path("t.inst") + " -O " + path("bad.out") + " --problem leafcolor");
  EXPECT_EQ(r.rc, 1);
  EXPECT_NE(r.out.find("1 2 "), std::string::npos) << r.out;
}

TEST_F(Cli, SolveByFamily) {
  EXPECT_EQ(run("solve --family hier -p k=2 -p n=100 -s recursive-hthc -k 2").rc, 0);
  EXPECT_EQ(run("solve --family hier -p k=2 -p n=100 -s sampled-hthc -k 2 --seed 4").rc, 0);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").rc, 2);
  EXPECT_EQ(run("frobnicate").rc, 2);
  EXPECT_EQ(run("gen nosuch").rc, 2);
  EXPECT_EQ(run("gen complete-binary -p depth").rc, 2);
  EXPECT_EQ(run("solve --family complete-binary -s nosuch").rc, 2);
  EXPECT_EQ(run("solve -s leafcolor-dist").rc, 2);
  EXPECT_EQ(run("adversary --problem btl -s const-R").rc, 2);
  EXPECT_EQ(run("fit " + path("missing.csv")).rc, 2);
  put("bad.cfg", "sweep = 15, 7\n");
  EXPECT_EQ(run("bench " + path("bad.cfg")).rc, 2);
  EXPECT_EQ(run("--help").rc, 0);
}

TEST_F(Cli, BenchAndFit) {
  put("b.cfg", "problem = leafcolor\nsolver = rw-to-leaf\nsweep = 127, 255, 511, 1023\nseeds = 2\n");
  ASSERT_EQ(run("bench " + path("b.cfg") + " -o " + path("b.csv")).rc, 0);
  std::string csv = slurp("b.csv");
  EXPECT_EQ(csv.rfind("# lclvol bench v1", 0), 0u);
  ASSERT_EQ(run("bench " + path("b.cfg") + " -o " + path("c.csv")).rc, 0);
  EXPECT_EQ(csv, slurp("c.csv"));
  CmdResult f = run("fit " + path("b.csv") + " --column max_vol");
  EXPECT_EQ(f.rc, 0);
  EXPECT_NE(f.out.find("points 4"), std::string::npos) << f.out;
  // An always-R solver on blue leaves: rows are written without costs and the run reports invalid output.
  put("bad.cfg", "solver = const-R\nsweep = 7, 15\n");
  CmdResult b = run("bench " + path("bad.cfg"));
  EXPECT_EQ(b.rc, 1);
  EXPECT_NE(b.out.find(",,,,"), std::string::npos);
}

TEST_F(Cli, Adversary) {
  CmdResult r = run("adversary --problem leafcolor -s left-walk-50 --budget 50");
  EXPECT_EQ(r.rc, 0);
  EXPECT_NE(r.out.find("status counterexample"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("replay invalid"), std::string::npos) << r.out;
  r = run("adversary --problem hthc -s threshold-x-2 -k 2 --budget 100 --transcript");
  EXPECT_NE(r.out.find("condition 5b"), std::string::npos) << r.out;
}

TEST_F(Cli, Mpc) {
  CmdResult r = run("mpc -s rw-to-leaf --c 0.5 --space 0 --family complete-binary -p depth=5");
  EXPECT_EQ(r.rc, 0);
  EXPECT_NE(r.out.find("round,machine,sent,received,stored"), std::string::npos);
  EXPECT_EQ(run("mpc -s rw-to-leaf --c 0.5 --space 2 --family complete-binary -p depth=5").rc, 1);
  EXPECT_EQ(run("mpc -s rw-to-leaf --c 0 --family complete-binary -p depth=5").rc, 2);
}
