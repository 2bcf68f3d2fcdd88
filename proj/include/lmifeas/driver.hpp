#ifndef LMIFEAS_DRIVER_HPP
#define LMIFEAS_DRIVER_HPP

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>

#include "lmifeas/errors.hpp"
#include "lmifeas/io.hpp"
#include "lmifeas/objectives.hpp"
#include "lmifeas/solvers.hpp"
#include "lmifeas/stepsize.hpp"

namespace lmifeas {

enum class Method { Nonsmooth, Smooth, BundleNonsmooth, BundleSmooth, Linsys };

inline std::optional<Method> method_from_string(std::string_view s) {
  if (s == "nonsmooth") return Method::Nonsmooth;
  if (s == "smooth") return Method::Smooth;
  if (s == "bundle-nonsmooth") return Method::BundleNonsmooth;
  if (s == "bundle-smooth") return Method::BundleSmooth;
  if (s == "linsys") return Method::Linsys;
  return std::nullopt;
}

inline const char* to_string(Method m) {
  switch (m) {
    case Method::Nonsmooth: return "nonsmooth";
    case Method::Smooth: return "smooth";
    case Method::BundleNonsmooth: return "bundle-nonsmooth";
    case Method::BundleSmooth: return "bundle-smooth";
    case Method::Linsys: return "linsys";
  }
  return "?";
}

struct RunConfig {
  /// Unset: bundle-nonsmooth for .lmi input, linsys for .lis input.
  std::optional<Method> method;
  double eps = 1e-8;
  std::optional<double> mu;
  std::optional<double> lh;
  StepsizeKind policy = StepsizeKind::Harmonic;
  std::size_t cap = kDefaultIterationCap;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> trace_path;
};

inline constexpr int kExitSolved = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCapReached = 2;

namespace detail {

inline void print_vector(std::ostream& os, const Vector& v) {
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << format_real(v[i]);
}

inline SolveResult dispatch(const RunConfig& cfg, Method method, const ProblemFile& file, std::ostream& out) {
  SolveOptions opt;
  opt.eps = cfg.eps;
  opt.cap = cfg.cap;
  opt.record_rows = cfg.trace_path.has_value();

  if (method == Method::Linsys) {
    const auto* lis = std::get_if<LisFile>(&file);
    if (!lis) throw InvalidParameter("method linsys needs a .lis linear system");
    if (!cfg.lh) throw InvalidParameter("method linsys requires --lh (Hoffman constant)");
    auto res = solve_linsys(lis->system, *cfg.lh, opt);
    out << "lh=" << format_real(*cfg.lh) << '\n';
    out << "iteration_bound=" << format_real(total_iteration_bound(res.phase_length, res.initial_value, cfg.eps))
        << '\n';
    return res;
  }

  const auto* lmi = std::get_if<LmiFile>(&file);
  if (!lmi) throw InvalidParameter(std::string("method ") + to_string(method) + " needs a .lmi problem");
  std::optional<double> mu = cfg.mu;
  if (!mu && lmi->certificate) mu = mu_of(*lmi->certificate);
  if (mu) out << "mu=" << format_real(*mu) << '\n';
  const auto c = constants(lmi->problem);
  const StepsizePolicy pol = StepsizePolicy::of(cfg.policy);

  switch (method) {
    case Method::Nonsmooth:
    case Method::Smooth: {
      if (!mu) throw InvalidParameter("method requires --mu (no Slater certificate in the problem file)");
      auto res = method == Method::Nonsmooth ? solve_nonsmooth(lmi->problem, *mu, opt)
                                             : solve_smooth(lmi->problem, *mu, opt);
      out << "iteration_bound="
          << format_real(total_iteration_bound(res.phase_length, res.initial_value, cfg.eps)) << '\n';
      return res;
    }
    case Method::BundleNonsmooth: {
      const NonsmoothOracle oracle(lmi->problem);
      auto res = solve_bundle(oracle, pol, opt);
      if (mu) {
        const double M = oracle.smoothness().M;
        out << "iteration_bound="
            << format_real(total_iteration_bound(bundle_nonsmooth_phase_bound(M, pol, *mu), res.initial_value,
                                                 cfg.eps))
            << '\n';
      }
      return res;
    }
    case Method::BundleSmooth: {
      auto res = solve_bundle(SmoothOracle(lmi->problem), pol, opt);
      if (mu) {
        out << "iteration_bound="
            << format_real(
                   total_iteration_bound(bundle_smooth_phase_bound(c.L, pol, *mu), res.initial_value, cfg.eps))
            << '\n';
      }
      return res;
    }
    case Method::Linsys: break;
  }
  throw InvalidParameter("unreachable method");
}

}  // namespace detail

/// Runs one solve and prints `key=value` lines on `out`.
/// Returns 0 when solved, 2 when the iteration cap was hit, 1 on any error.
inline int run_solve(const RunConfig& cfg, const ProblemFile& file, std::ostream& out, std::ostream& err) {
  try {
    if (!(cfg.eps > 0.0)) throw InvalidParameter("--eps must be positive");
    if (cfg.mu && !(*cfg.mu > 0.0)) throw InvalidParameter("--mu must be positive");
    if (cfg.lh && !(*cfg.lh > 0.0)) throw InvalidParameter("--lh must be positive");
    const Method method =
        cfg.method.value_or(std::holds_alternative<LisFile>(file) ? Method::Linsys : Method::BundleNonsmooth);
    out << "method=" << to_string(method) << '\n';
    if (method == Method::BundleNonsmooth || method == Method::BundleSmooth) {
      out << "policy=" << (cfg.policy == StepsizeKind::Harmonic ? "harmonic" : "recursive") << '\n';
    }
    const SolveResult res = detail::dispatch(cfg, method, file, out);
    if (cfg.trace_path) {
      std::ofstream tf(*cfg.trace_path);
      if (!tf) throw Error("cannot open trace file " + *cfg.trace_path);
      write_trace_csv(tf, res.trace);
      if (!tf) throw Error("failed writing trace file " + *cfg.trace_path);
    }
    if (res.phase_length) out << "phase_length=" << res.phase_length << '\n';
    out << "initial_value=" << format_real(res.initial_value) << '\n';
    out << "final_value=" << format_real(res.value) << '\n';
    out << "iterations=" << res.iterations << '\n';
    out << "phases=" << res.phases << '\n';
    out << "solution=";
    detail::print_vector(out, res.solution);
    out << '\n';
    out << "status=" << to_string(res.status) << '\n';
    return res.status == SolveStatus::Solved ? kExitSolved : kExitCapReached;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

/// Validates file integrity and any embedded certificate.
inline int run_check(std::string_view text, std::ostream& out, std::ostream& err) {
  try {
    const ProblemFile file = parse_problem(text);
    if (const auto* lmi = std::get_if<LmiFile>(&file)) {
      out << "kind=lmi\nn=" << lmi->problem.n() << "\nm=" << lmi->problem.m() << '\n';
      const auto c = constants(lmi->problem);
      out << "M=" << format_real(c.M) << "\nopnorm=" << format_real(c.opnorm) << "\nL=" << format_real(c.L) << '\n';
      if (lmi->certificate) {
        const double top = lambda_max(constraint_matrix(lmi->problem, lmi->certificate->point())).value;
        out << "certificate=valid\nsigma=" << format_real(lmi->certificate->margin())
            << "\nlambda_max_at_point=" << format_real(top) << "\nmu=" << format_real(mu_of(*lmi->certificate))
            << '\n';
      } else {
        out << "certificate=absent\n";
      }
    } else {
      const auto& lis = std::get<LisFile>(file);
      out << "kind=lis\np=" << lis.system.p() << "\nq=" << lis.system.q() << '\n';
      out << "matrix_norm=" << format_real(spectral_norm(lis.system.rows())) << '\n';
    }
    out << "status=ok\n";
    return kExitSolved;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    out << "status=invalid\n";
    return kExitError;
  }
}

}  // namespace lmifeas

#endif  // LMIFEAS_DRIVER_HPP
