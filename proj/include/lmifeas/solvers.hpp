#ifndef LMIFEAS_SOLVERS_HPP
#define LMIFEAS_SOLVERS_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lmifeas/errors.hpp"
#include "lmifeas/lmi_model.hpp"
#include "lmifeas/objectives.hpp"
#include "lmifeas/stepsize.hpp"
#include "lmifeas/vector_ops.hpp"

namespace lmifeas {

inline constexpr std::size_t kDefaultIterationCap = 10'000'000;

enum class SolveStatus { Solved, IterationCapReached };

enum class PhaseEnd {
  Completed,       // ran its full budget (restart methods) or halved (bundle)
  BelowTolerance,  // left early because the value dropped to eps
  CapReached,
};

struct TraceRow {
  std::size_t phase;
  std::size_t iter;
  std::size_t total_iter;
  double f_value;
  double elapsed_ms;
};

struct PhaseRecord {
  std::size_t index;
  double start_value;
  double end_value;
  std::size_t iterations;
  PhaseEnd end;
  Vector start_point;
  /// Σ‖x_τ − x_{τ−1}‖² over the prox-centers of a gap reduction call; 0 elsewhere.
  double prox_travel_sq = 0.0;
};

struct SolveTrace {
  std::vector<TraceRow> rows;
  std::vector<PhaseRecord> phases;
};

struct SolveResult {
  Vector solution;
  double value;
  double initial_value;
  std::size_t iterations;
  std::size_t phases;
  /// Restart length K for the restarted methods, 0 for the bundle method.
  std::size_t phase_length;
  SolveTrace trace;
  SolveStatus status;
};

struct SolveOptions {
  double eps = 1e-8;
  std::size_t cap = kDefaultIterationCap;
  /// Initial point; empty means the origin.
  Vector start;
  /// Keep one TraceRow per inner iteration.
  bool record_rows = true;
};

/// Counts inner iterations and collects the trace of one solve.
class TraceRecorder {
 public:
  explicit TraceRecorder(bool record_rows) : record_rows_(record_rows), t0_(std::chrono::steady_clock::now()) {}

  void row(std::size_t phase, std::size_t iter, double value) {
    ++total_;
    if (record_rows_) {
      const auto dt = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
      trace_.rows.push_back({phase, iter, total_, value, dt});
    }
  }

  void phase(PhaseRecord rec) { trace_.phases.push_back(std::move(rec)); }

  std::size_t total() const noexcept { return total_; }
  SolveTrace take() { return std::move(trace_); }

 private:
  bool record_rows_;
  std::chrono::steady_clock::time_point t0_;
  std::size_t total_ = 0;
  SolveTrace trace_;
};

// ---------------------------------------------------------------------------
// Restart lengths and closed-form iteration bounds.

inline std::size_t ceil_count(double v) {
  if (!std::isfinite(v) || v > 1e18) throw InvalidParameter("restart length overflows");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(v)));
}

/// K = ⌈4M²μ²⌉
inline std::size_t nonsmooth_restart_length(double M, double mu) { return ceil_count(4.0 * M * M * mu * mu); }

/// K = ⌈4μ‖𝒜‖⌉
inline std::size_t smooth_restart_length(double opnorm, double mu) { return ceil_count(4.0 * mu * opnorm); }

/// K = ⌈√(8‖A‖²L_H²)⌉
inline std::size_t linsys_restart_length(double matrix_norm, double hoffman) {
  return ceil_count(std::sqrt(8.0 * matrix_norm * matrix_norm * hoffman * hoffman));
}

/// Per-phase bound of the gap reduction procedure on a smooth (M = 0) objective: ⌈√(L C₁C₂)·μ⌉.
inline std::size_t bundle_smooth_phase_bound(double L, StepsizePolicy pol, double mu) {
  return ceil_count(std::sqrt(L * pol.C1 * pol.C2) * mu);
}

/// Per-phase bound on a non-smooth (L = 0) objective: ⌈4M²C₃²μ²⌉.
inline std::size_t bundle_nonsmooth_phase_bound(double M, StepsizePolicy pol, double mu) {
  return ceil_count(4.0 * M * M * pol.C3 * pol.C3 * mu * mu);
}

/// K·log₂(f₀/ε), or 0 when f₀ ≤ ε.
inline double total_iteration_bound(std::size_t phase_length, double f0, double eps) {
  if (f0 <= eps) return 0.0;
  return static_cast<double>(phase_length) * std::log2(f0 / eps);
}

// ---------------------------------------------------------------------------
// Inner engines.

struct PhaseOutcome {
  Vector point;
  OracleEval eval;
  std::size_t iterations;
  PhaseEnd end;
};

namespace detail {

inline Vector start_point(const SolveOptions& opt, std::size_t dim) {
  if (opt.start.empty()) return Vector(dim, 0.0);
  require_same_size(opt.start.size(), dim, "solver start point");
  return opt.start;
}

inline void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidParameter(std::string(name) + " must be positive and finite");
}

/// Runs at most `max_iters` of K subgradient steps with step gamma/√K and
/// keeps the best iterate among x̄₁…x̄_K.
template <FirstOrderOracle O>
PhaseOutcome run_subgradient(const O& oracle, Vector x, const OracleEval& start, std::size_t K, double gamma,
                             std::size_t max_iters, double eps, TraceRecorder* rec, std::size_t phase) {
  const double step = gamma / std::sqrt(static_cast<double>(K));
  const std::size_t budget = std::min(K, max_iters);
  Vector g = start.gradient;
  std::optional<PhaseOutcome> best;
  PhaseEnd end = budget < K ? PhaseEnd::CapReached : PhaseEnd::Completed;
  std::size_t i = 0;
  while (i < budget) {
    axpy(-step, g, x);
    OracleEval ev = oracle.evaluate(x);
    ++i;
    if (rec) rec->row(phase, i, ev.value);
    g = ev.gradient;
    const bool done = ev.value <= eps;
    if (!best || ev.value < best->eval.value) best = PhaseOutcome{x, std::move(ev), 0, end};
    if (done) {
      end = PhaseEnd::BelowTolerance;
      break;
    }
  }
  if (!best) return {std::move(x), start, 0, PhaseEnd::CapReached};
  best->iterations = i;
  best->end = end;
  return std::move(*best);
}

/// Accelerated gradient scheme
///   θ_t = 2/(t+1),  y = (1−θ)x̄ + θz,  z ← z − t/(2L)·∇f(y),  x̄ ← (1−θ)x̄ + θz
/// started from x̄ = z = x₀. It satisfies f(x̄_K) − f* ≤ 2L‖x₀ − x*‖²/(K(K+1)).
template <FirstOrderOracle O>
PhaseOutcome run_accelerated(const O& oracle, double L, Vector x0, std::size_t K, std::size_t max_iters,
                             double eps, TraceRecorder* rec, std::size_t phase) {
  const std::size_t budget = std::min(K, max_iters);
  Vector z = x0;
  Vector xbar = std::move(x0);
  std::optional<OracleEval> last;
  PhaseEnd end = budget < K ? PhaseEnd::CapReached : PhaseEnd::Completed;
  std::size_t t = 0;
  while (t < budget) {
    ++t;
    const double theta = 2.0 / (static_cast<double>(t) + 1.0);
    const Vector y = lerp(xbar, z, theta);
    const OracleEval gy = oracle.evaluate(y);
    axpy(-static_cast<double>(t) / (2.0 * L), gy.gradient, z);
    xbar = lerp(xbar, z, theta);
    last = oracle.evaluate(xbar);
    if (rec) rec->row(phase, t, last->value);
    if (last->value <= eps) {
      end = PhaseEnd::BelowTolerance;
      break;
    }
  }
  if (!last) last = oracle.evaluate(xbar);
  return {std::move(xbar), std::move(*last), t, end};
}

}  // namespace detail

struct BestPoint {
  Vector point;
  double value;
};

/// K subgradient steps x̄_{i+1} = x̄_i − (γ/√K) g(x̄_i); returns the best of x̄₁…x̄_K.
template <FirstOrderOracle O>
BestPoint subgradient_phase(const O& oracle, std::span<const double> x0, std::size_t K, double gamma) {
  if (K == 0) throw InvalidParameter("subgradient_phase: K must be >= 1");
  detail::require_positive(gamma, "gamma");
  require_same_size(x0.size(), oracle.dimension(), "subgradient_phase");
  Vector x(x0.begin(), x0.end());
  const OracleEval start = oracle.evaluate(x);
  auto out = detail::run_subgradient(oracle, std::move(x), start, K, gamma, K,
                                     -std::numeric_limits<double>::infinity(), nullptr, 0);
  return {std::move(out.point), out.eval.value};
}

/// K iterations of the accelerated scheme; returns x̄_K.
template <FirstOrderOracle O>
Vector accelerated_phase(const O& oracle, double L, std::span<const double> x0, std::size_t K) {
  if (K == 0) throw InvalidParameter("accelerated_phase: K must be >= 1");
  detail::require_positive(L, "L");
  require_same_size(x0.size(), oracle.dimension(), "accelerated_phase");
  return detail::run_accelerated(oracle, L, Vector(x0.begin(), x0.end()), K, K,
                                 -std::numeric_limits<double>::infinity(), nullptr, 0)
      .point;
}

namespace detail {

/// Shared restart loop: phase k starts from x_{k−1} and runs a fresh inner method for K iterations.
template <FirstOrderOracle O, class PhaseFn>
SolveResult restart_loop(const O& oracle, std::size_t K, const SolveOptions& opt, PhaseFn&& run_phase) {
  require_positive(opt.eps, "eps");
  TraceRecorder rec(opt.record_rows);
  Vector x = start_point(opt, oracle.dimension());
  OracleEval ev = oracle.evaluate(x);
  const double f0 = ev.value;
  std::size_t phase = 0;
  while (ev.value > opt.eps && rec.total() < opt.cap) {
    ++phase;
    const double start_value = ev.value;
    Vector start = x;
    PhaseOutcome out = run_phase(std::move(x), ev, opt.cap - rec.total(), rec, phase);
    rec.phase({phase, start_value, out.eval.value, out.iterations, out.end, std::move(start), 0.0});
    x = std::move(out.point);
    ev = std::move(out.eval);
  }
  const SolveStatus status = ev.value <= opt.eps ? SolveStatus::Solved : SolveStatus::IterationCapReached;
  const std::size_t total = rec.total();
  return SolveResult{std::move(x), ev.value, f0, total, phase, K, rec.take(), status};
}

}  // namespace detail

/// Restarted subgradient method for max(λ₁(𝒜x − B), 0).
///
/// Every phase runs K = ⌈4M²μ²⌉ steps of length γ/√K with γ = μ f(x_{k−1})/M
/// and restarts from the best iterate, halving the objective whenever
/// d(x, X*) ≤ μ f(x) holds at the phase start.
inline SolveResult solve_nonsmooth(const LmiProblem& p, double mu, const SolveOptions& opt = {}) {
  detail::require_positive(mu, "mu");
  detail::require_positive(opt.eps, "eps");
  const NonsmoothOracle oracle(p);
  const double M = oracle.lipschitz();
  if (!(M > 0.0)) throw InvalidParameter("solve_nonsmooth: operator is zero");
  const std::size_t K = nonsmooth_restart_length(M, mu);
  return detail::restart_loop(oracle, K, opt,
                              [&](Vector x, const OracleEval& ev, std::size_t left, TraceRecorder& rec,
                                  std::size_t phase) {
                                const double gamma = mu * ev.value / M;
                                return detail::run_subgradient(oracle, std::move(x), ev, K, gamma, left, opt.eps,
                                                               &rec, phase);
                              });
}

/// Restarted accelerated gradient method for dist_F²(𝒜x − B, 𝒮ⁿ₋) with K = ⌈4μ‖𝒜‖⌉.
inline SolveResult solve_smooth(const LmiProblem& p, double mu, const SolveOptions& opt = {}) {
  detail::require_positive(mu, "mu");
  detail::require_positive(opt.eps, "eps");
  const SmoothOracle oracle(p);
  const auto& c = oracle.operator_constants();
  if (!(c.L > 0.0)) throw InvalidParameter("solve_smooth: operator is zero");
  const std::size_t K = smooth_restart_length(c.opnorm, mu);
  return detail::restart_loop(oracle, K, opt,
                              [&](Vector x, const OracleEval&, std::size_t left, TraceRecorder& rec,
                                  std::size_t phase) {
                                return detail::run_accelerated(oracle, c.L, std::move(x), K, left, opt.eps, &rec,
                                                               phase);
                              });
}

/// Restarted accelerated gradient method for ½‖e(Ax − b)‖² with K = ⌈√(8‖A‖²L_H²)⌉.
inline SolveResult solve_linsys(const LinIneqSystem& sys, double hoffman, const SolveOptions& opt = {}) {
  detail::require_positive(hoffman, "LH");
  detail::require_positive(opt.eps, "eps");
  const LinsysOracle oracle(sys);
  const double L = oracle.smoothness().L;
  if (!(L > 0.0)) throw InvalidParameter("solve_linsys: matrix is zero");
  const std::size_t K = linsys_restart_length(oracle.matrix_norm(), hoffman);
  return detail::restart_loop(oracle, K, opt,
                              [&](Vector x, const OracleEval&, std::size_t left, TraceRecorder& rec,
                                  std::size_t phase) {
                                return detail::run_accelerated(oracle, L, std::move(x), K, left, opt.eps, &rec,
                                                               phase);
                              });
}

// ---------------------------------------------------------------------------
// Bundle-level method.

/// argmin{‖x − x_prev‖² : fz + ⟨g, x − z⟩ ≤ level}
inline Vector level_project(std::span<const double> x_prev, std::span<const double> z, double fz,
                            std::span<const double> g, double level) {
  require_same_size(z.size(), x_prev.size(), "level_project z");
  require_same_size(g.size(), x_prev.size(), "level_project g");
  if (!all_finite(g)) throw NonFiniteInput("level_project: non-finite slope");
  double h = fz;
  for (std::size_t i = 0; i < g.size(); ++i) h += g[i] * (x_prev[i] - z[i]);
  Vector out(x_prev.begin(), x_prev.end());
  if (h <= level) return out;
  const double gg = dot(g, g);
  if (gg == 0.0) throw InfeasibleLevel("level_project: model is constant and above the level");
  axpy(-(h - level) / gg, g, out);
  return out;
}

enum class GapReductionEnd { Halved, BelowTolerance, CapReached };

struct GapReductionResult {
  Vector xbar;
  OracleEval eval;
  std::size_t iterations;
  GapReductionEnd end;
  double prox_travel_sq;
};

namespace detail {

template <FirstOrderOracle O>
GapReductionResult run_gap_reduction(const O& oracle, Vector x0u, OracleEval start, double level,
                                     StepsizePolicy policy, std::size_t cap, double eps, TraceRecorder* rec,
                                     std::size_t phase) {
  const double gap0 = start.value - level;
  Vector xu = std::move(x0u);
  OracleEval fu = std::move(start);
  if (gap0 <= 0.0) return {std::move(xu), std::move(fu), 0, GapReductionEnd::Halved, 0.0};
  Vector prox = xu;
  StepsizeSchedule sched(policy);
  double travel = 0.0;
  std::size_t t = 0;
  while (true) {
    if (t >= cap) return {std::move(xu), std::move(fu), t, GapReductionEnd::CapReached, travel};
    ++t;
    const double alpha = sched.next().alpha;
    const Vector xl = lerp(xu, prox, alpha);
    const OracleEval fl = oracle.evaluate(xl);
    Vector next = level_project(prox, xl, fl.value, fl.gradient, level);
    travel += distance_sq(next, prox);
    Vector cand = lerp(xu, next, alpha);
    OracleEval fc = oracle.evaluate(cand);
    if (fc.value <= fu.value) {
      xu = std::move(cand);
      fu = std::move(fc);
    }
    prox = std::move(next);
    if (rec) rec->row(phase, t, fu.value);
    if (fu.value - level <= 0.5 * gap0) return {std::move(xu), std::move(fu), t, GapReductionEnd::Halved, travel};
    if (fu.value <= eps) return {std::move(xu), std::move(fu), t, GapReductionEnd::BelowTolerance, travel};
  }
}

}  // namespace detail

/// Gap reduction procedure with a fixed level and a single cutting plane.
/// Stops once f̄_t − level ≤ ½(f̄₀ − level).
template <FirstOrderOracle O>
GapReductionResult gap_reduction(const O& oracle, std::span<const double> x0u, double level, StepsizePolicy policy,
                                 std::size_t cap = kDefaultIterationCap) {
  require_same_size(x0u.size(), oracle.dimension(), "gap_reduction");
  Vector x(x0u.begin(), x0u.end());
  OracleEval start = oracle.evaluate(x);
  return detail::run_gap_reduction(oracle, std::move(x), std::move(start), level, policy, cap,
                                   -std::numeric_limits<double>::infinity(), nullptr, 0);
}

/// Bundle-level outer loop: repeated gap reductions at level 0 from the
/// previous output, with stepsizes reset every phase. Uses no smoothness
/// constants.
template <FirstOrderOracle O>
SolveResult solve_bundle(const O& oracle, StepsizePolicy policy, const SolveOptions& opt = {}) {
  detail::require_positive(opt.eps, "eps");
  TraceRecorder rec(opt.record_rows);
  Vector x = detail::start_point(opt, oracle.dimension());
  OracleEval ev = oracle.evaluate(x);
  const double f0 = ev.value;
  std::size_t phase = 0;
  while (ev.value > opt.eps && rec.total() < opt.cap) {
    ++phase;
    const double start_value = ev.value;
    Vector start = x;
    auto out = detail::run_gap_reduction(oracle, std::move(x), std::move(ev), 0.0, policy, opt.cap - rec.total(),
                                         opt.eps, &rec, phase);
    const PhaseEnd end = out.end == GapReductionEnd::Halved           ? PhaseEnd::Completed
                         : out.end == GapReductionEnd::BelowTolerance ? PhaseEnd::BelowTolerance
                                                                      : PhaseEnd::CapReached;
    rec.phase({phase, start_value, out.eval.value, out.iterations, end, std::move(start), out.prox_travel_sq});
    x = std::move(out.xbar);
    ev = std::move(out.eval);
  }
  const SolveStatus status = ev.value <= opt.eps ? SolveStatus::Solved : SolveStatus::IterationCapReached;
  const std::size_t total = rec.total();
  return SolveResult{std::move(x), ev.value, f0, total, phase, 0, rec.take(), status};
}

inline const char* to_string(SolveStatus s) { return s == SolveStatus::Solved ? "Solved" : "IterationCapReached"; }

}  // namespace lmifeas

#endif  // LMIFEAS_SOLVERS_HPP
