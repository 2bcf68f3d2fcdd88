// Command-line front end: solve, gen, check.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lmifeas/driver.hpp"
#include "lmifeas/io.hpp"
#include "lmifeas/testbench.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lmifeas::Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return lmifeas::kExitSolved;
  }
  std::ofstream out(out_path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write " << out_path << '\n';
    return lmifeas::kExitError;
  }
  return lmifeas::kExitSolved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"First-order solvers for linear matrix inequality feasibility"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "Run a solver on a .lmi or .lis file");
  std::string method_name;
  std::string policy_name = "harmonic";
  std::string problem_path;
  std::string trace_path;
  lmifeas::RunConfig cfg;
  double mu = 0.0;
  double lh = 0.0;
  std::uint64_t solve_seed = 0;
  solve->add_option("--method", method_name, "nonsmooth | smooth | bundle-nonsmooth | bundle-smooth | linsys");
  solve->add_option("--eps", cfg.eps, "Target objective value")->capture_default_str();
  auto* mu_opt = solve->add_option("--mu", mu, "Error-bound modulus (defaults to |d|/sigma of the certificate)");
  auto* lh_opt = solve->add_option("--lh", lh, "Hoffman constant for linsys");
  solve->add_option("--policy", policy_name, "harmonic | recursive (bundle methods)")->capture_default_str();
  solve->add_option("--cap", cfg.cap, "Inner iteration cap")->capture_default_str();
  solve->add_option("--trace", trace_path, "Write per-iteration CSV trace here");
  auto* solve_seed_opt = solve->add_option("--seed", solve_seed, "Recorded only; solvers are deterministic");
  solve->add_option("problem", problem_path, "Problem file")->required();

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a certified .lmi instance or a consistent .lis system");
  std::size_t n = 0, m = 0, p = 0, q = 0;
  double sigma = 1.0;
  std::uint64_t seed = 0;
  std::string rows = "mixed";
  std::string out_path;
  auto* n_opt = gen->add_option("--n", n, "Matrix dimension");
  auto* m_opt = gen->add_option("--m", m, "Number of variables");
  gen->add_option("--sigma", sigma, "Slater margin")->capture_default_str();
  auto* p_opt = gen->add_option("--p", p, "Rows of a linear system");
  auto* q_opt = gen->add_option("--q", q, "Columns of a linear system");
  gen->add_option("--rows", rows, "eq | le | mixed row kinds for --p/--q")->capture_default_str();
  gen->add_option("--seed", seed, "Generator seed")->capture_default_str();
  gen->add_option("-o,--out", out_path, "Output path (stdout when omitted)");
  n_opt->excludes(p_opt)->excludes(q_opt);
  m_opt->excludes(p_opt)->excludes(q_opt);

  // check
  auto* check = app.add_subcommand("check", "Validate a problem file and its certificate");
  std::string check_path;
  check->add_option("problem", check_path, "Problem file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : lmifeas::kExitError;
  }

  try {
    if (*solve) {
      if (!method_name.empty()) {
        cfg.method = lmifeas::method_from_string(method_name);
        if (!cfg.method) throw lmifeas::InvalidParameter("unknown method '" + method_name + "'");
      }
      if (policy_name == "harmonic") {
        cfg.policy = lmifeas::StepsizeKind::Harmonic;
      } else if (policy_name == "recursive") {
        cfg.policy = lmifeas::StepsizeKind::Recursive;
      } else {
        throw lmifeas::InvalidParameter("unknown policy '" + policy_name + "'");
      }
      if (*mu_opt) cfg.mu = mu;
      if (*lh_opt) cfg.lh = lh;
      if (*solve_seed_opt) cfg.seed = solve_seed;
      if (!trace_path.empty()) cfg.trace_path = trace_path;
      const auto file = lmifeas::parse_problem(read_file(problem_path));
      return lmifeas::run_solve(cfg, file, std::cout, std::cerr);
    }
    if (*gen) {
      if (*p_opt || *q_opt) {
        if (!*p_opt || !*q_opt) throw lmifeas::InvalidParameter("gen needs both --p and --q");
        lmifeas::RowMix mix = lmifeas::RowMix::Mixed;
        if (rows == "eq") {
          mix = lmifeas::RowMix::AllEq;
        } else if (rows == "le") {
          mix = lmifeas::RowMix::AllLe;
        } else if (rows != "mixed") {
          throw lmifeas::InvalidParameter("unknown --rows '" + rows + "'");
        }
        auto inst = lmifeas::gen_linsys(p, q, seed, mix);
        return write_output(lmifeas::serialize(lmifeas::LisFile{std::move(inst.system)}), out_path);
      }
      if (!*n_opt || !*m_opt) throw lmifeas::InvalidParameter("gen needs --n and --m (or --p and --q)");
      auto inst = lmifeas::gen_lmi(n, m, sigma, seed);
      return write_output(lmifeas::serialize(lmifeas::LmiFile{std::move(inst.problem), std::move(inst.certificate)}),
                          out_path);
    }
    if (*check) {
      return lmifeas::run_check(read_file(check_path), std::cout, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return lmifeas::kExitError;
  }
  return lmifeas::kExitError;
}
