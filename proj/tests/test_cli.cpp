#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "cli_runner.hpp"
#include "lmifeas/io.hpp"
#include "lmifeas/testbench.hpp"

using namespace lmifeas;
using namespace lmifeas::testing;
namespace fs = std::filesystem;

namespace {

const std::string kCli = LMIFEAS_CLI_PATH;

fs::path scratch(const std::string& name) {
  const fs::path dir = LMIFEAS_SCRATCH_DIR;
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

}  // namespace

TEST(Cli, GenWritesParseableCertifiedFile) {
  const fs::path f = scratch("gen_5_3.lmi");
  const auto r = run_cli(kCli, "gen --n 5 --m 3 --sigma 1 --seed 7 -o '" + f.string() + "'");
  ASSERT_EQ(r.exit_code, 0);
  const std::string text = slurp(f);
  const auto file = parse_problem(text);
  const auto& lmi = std::get<LmiFile>(file);
  ASSERT_TRUE(lmi.certificate.has_value());
  const auto inst = gen_lmi(5, 3, 1.0, 7);
  EXPECT_EQ(lmi.problem, inst.problem);
  EXPECT_EQ(serialize(parse_problem(text)), text);
  // stdout variant is byte-identical
  EXPECT_EQ(run_cli(kCli, "gen --n 5 --m 3 --sigma 1 --seed 7").out, text);
}

TEST(Cli, SolveSmoothOnCertifiedInstance) {
  const fs::path f = scratch("smooth.lmi");
  ASSERT_EQ(run_cli(kCli, "gen --n 5 --m 3 --sigma 1 --seed 7 -o '" + f.string() + "'").exit_code, 0);
  const auto r = run_cli(kCli, "solve --method smooth --eps 1e-8 '" + f.string() + "'");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(field(r.out, "status"), "Solved");
  EXPECT_LE(std::stod(field(r.out, "final_value")), 1e-8);
}

TEST(Cli, TraceRowCountMatchesIterations) {
  const fs::path f = scratch("trace.lmi");
  ASSERT_EQ(run_cli(kCli, "gen --n 4 --m 2 --sigma 0.5 --seed 3 -o '" + f.string() + "'").exit_code, 0);
  for (const char* method : {"nonsmooth", "smooth", "bundle-nonsmooth", "bundle-smooth"}) {
    const fs::path t = scratch(std::string("trace_") + method + ".csv");
    const auto r = run_cli(kCli, std::string("solve --method ") + method + " --trace '" + t.string() + "' '" +
                                     f.string() + "'");
    ASSERT_EQ(r.exit_code, 0) << method;
    const std::string csv = slurp(t);
    EXPECT_EQ(csv.rfind("phase,iter,total_iter,f_value,elapsed_ms\n", 0), 0u);
    EXPECT_EQ(count_lines(csv), std::stoul(field(r.out, "iterations")) + 1) << method;
  }
}

TEST(Cli, MissingMuExitsOne) {
  const fs::path f = scratch("nocert.lmi");
  write(f, "lmi 1 1\nB\n0\nA 1\n1\n");
  EXPECT_EQ(run_cli(kCli, "solve --method nonsmooth '" + f.string() + "'").exit_code, 1);
  // the diagnostic goes to stderr
  const std::string cmd = "'" + kCli + "' solve --method smooth '" + f.string() + "' 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  char buf[512] = {};
  const std::size_t got = std::fread(buf, 1, sizeof buf - 1, pipe);
  pclose(pipe);
  EXPECT_NE(std::string(buf, got).find("mu"), std::string::npos);
  EXPECT_EQ(run_cli(kCli, "solve --method smooth --mu 1 '" + f.string() + "'").exit_code, 0);
}

TEST(Cli, CapReachedExitsTwo) {
  const fs::path f = scratch("cap.lmi");
  ASSERT_EQ(run_cli(kCli, "gen --n 5 --m 3 --seed 1 -o '" + f.string() + "'").exit_code, 0);
  const auto r = run_cli(kCli, "solve --method smooth --cap 2 --eps 1e-14 '" + f.string() + "'");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_EQ(field(r.out, "status"), "IterationCapReached");
  EXPECT_EQ(field(r.out, "iterations"), "2");
}

TEST(Cli, ErrorsExitOne) {
  EXPECT_EQ(run_cli(kCli, "solve '" + scratch("does_not_exist.lmi").string() + "'").exit_code, 1);
  const fs::path bad = scratch("bad.lmi");
  write(bad, "lmi 2 1\nB\n1 0\n");
  EXPECT_EQ(run_cli(kCli, "solve '" + bad.string() + "'").exit_code, 1);
  EXPECT_EQ(run_cli(kCli, "check '" + bad.string() + "'").exit_code, 1);
  EXPECT_EQ(run_cli(kCli, "solve --method quantum '" + bad.string() + "'").exit_code, 1);
  EXPECT_EQ(run_cli(kCli, "solve --eps -1 '" + bad.string() + "'").exit_code, 1);
  EXPECT_EQ(run_cli(kCli, "frobnicate").exit_code, 1);
  EXPECT_EQ(run_cli(kCli, "").exit_code, 1);
}

TEST(Cli, LinearSystemRoundTripAndSolve) {
  const fs::path f = scratch("sys.lis");
  ASSERT_EQ(run_cli(kCli, "gen --p 6 --q 3 --rows eq --seed 4 -o '" + f.string() + "'").exit_code, 0);
  const std::string text = slurp(f);
  EXPECT_EQ(serialize(parse_problem(text)), text);
  const auto sys = std::get<LisFile>(parse_problem(text)).system;
  const double LH = hoffman_eq(sys.rows());
  const auto r = run_cli(kCli, "solve --lh " + format_real(LH) + " '" + f.string() + "'");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(field(r.out, "method"), "linsys");
  EXPECT_EQ(run_cli(kCli, "solve '" + f.string() + "'").exit_code, 1);
}

TEST(Cli, CheckReportsCertificate) {
  const fs::path f = scratch("check.lmi");
  ASSERT_EQ(run_cli(kCli, "gen --n 3 --m 2 --sigma 0.1 --seed 9 -o '" + f.string() + "'").exit_code, 0);
  const auto r = run_cli(kCli, "check '" + f.string() + "'");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(field(r.out, "certificate"), "valid");
  EXPECT_EQ(field(r.out, "status"), "ok");
}
