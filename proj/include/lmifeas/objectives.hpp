#ifndef LMIFEAS_OBJECTIVES_HPP
#define LMIFEAS_OBJECTIVES_HPP

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>

#include "lmifeas/lmi_model.hpp"
#include "lmifeas/spectral.hpp"
#include "lmifeas/vector_ops.hpp"

namespace lmifeas {

/// Objective value and a (sub)gradient at one point.
struct OracleEval {
  double value;
  Vector gradient;
};

/// Constants of the envelope  f(y) − f(x) − ⟨g(x), y−x⟩ ≤ (L/2)‖y−x‖² + M‖y−x‖.
struct Smoothness {
  double L;
  double M;
};

template <class O>
concept FirstOrderOracle = requires(const O& o, std::span<const double> x) {
  { o.evaluate(x) } -> std::same_as<OracleEval>;
  { o.dimension() } -> std::convertible_to<std::size_t>;
  { o.smoothness() } -> std::same_as<Smoothness>;
};

/// f(x) = max(λ₁(𝒜x − B), 0) with subgradient 𝒜ᵀ(vvᵀ) for a top eigenvector v.
/// At λ₁ ≤ 0 the subgradient returned is 0.
inline OracleEval eval_nonsmooth(const LmiProblem& p, std::span<const double> x) {
  const auto top = lambda_max(constraint_matrix(p, x));
  if (!(top.value > 0.0)) return {0.0, Vector(p.m(), 0.0)};
  Vector g(p.m());
  for (std::size_t i = 0; i < p.m(); ++i) {
    // vᵀ Aᵢ v
    g[i] = dot(top.vector, p.coeff(i).apply(top.vector));
  }
  return {top.value, std::move(g)};
}

/// f(x) = dist_F²(𝒜x − B, 𝒮ⁿ₋) with gradient 2𝒜ᵀ(residual).
inline OracleEval eval_smooth(const LmiProblem& p, std::span<const double> x) {
  const auto split = project_neg_semidef(constraint_matrix(p, x));
  const double value = frobenius_inner(split.residual, split.residual);
  Vector g = adjoint_apply(p, split.residual);
  for (double& gi : g) gi *= 2.0;
  return {value, std::move(g)};
}

/// f(x) = ½‖e(Ax − b)‖² with gradient Aᵀe(Ax − b).
inline OracleEval eval_linsys(const LinIneqSystem& sys, std::span<const double> x) {
  Vector y = sys.rows().apply(x);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= sys.rhs()[i];
  const Vector e = residual_map(sys, y);
  return {0.5 * dot(e, e), sys.rows().apply_transpose(e)};
}

class NonsmoothOracle {
 public:
  explicit NonsmoothOracle(LmiProblem p) : p_(std::move(p)), c_(constants(p_)) {}

  OracleEval evaluate(std::span<const double> x) const { return eval_nonsmooth(p_, x); }
  std::size_t dimension() const noexcept { return p_.m(); }
  /// Subgradient norms are bounded by c.M; the linearization error of a
  /// function with that Lipschitz constant can reach twice it.
  Smoothness smoothness() const noexcept { return {0.0, 2.0 * c_.M}; }
  double lipschitz() const noexcept { return c_.M; }
  const LmiProblem& problem() const noexcept { return p_; }
  const OperatorConstants& operator_constants() const noexcept { return c_; }

 private:
  LmiProblem p_;
  OperatorConstants c_;
};

class SmoothOracle {
 public:
  explicit SmoothOracle(LmiProblem p) : p_(std::move(p)), c_(constants(p_)) {}

  OracleEval evaluate(std::span<const double> x) const { return eval_smooth(p_, x); }
  std::size_t dimension() const noexcept { return p_.m(); }
  Smoothness smoothness() const noexcept { return {c_.L, 0.0}; }
  const LmiProblem& problem() const noexcept { return p_; }
  const OperatorConstants& operator_constants() const noexcept { return c_; }

 private:
  LmiProblem p_;
  OperatorConstants c_;
};

class LinsysOracle {
 public:
  explicit LinsysOracle(LinIneqSystem sys) : sys_(std::move(sys)), norm_(spectral_norm(sys_.rows())) {}

  OracleEval evaluate(std::span<const double> x) const { return eval_linsys(sys_, x); }
  std::size_t dimension() const noexcept { return sys_.q(); }
  Smoothness smoothness() const noexcept { return {norm_ * norm_, 0.0}; }
  /// ‖A‖₂
  double matrix_norm() const noexcept { return norm_; }
  const LinIneqSystem& system() const noexcept { return sys_; }

 private:
  LinIneqSystem sys_;
  double norm_;
};

/// Wraps an arbitrary callable; used for scalar test functions.
class FunctionOracle {
 public:
  using Fn = std::function<OracleEval(std::span<const double>)>;

  FunctionOracle(std::size_t dim, Smoothness s, Fn fn) : dim_(dim), s_(s), fn_(std::move(fn)) {}

  OracleEval evaluate(std::span<const double> x) const { return fn_(x); }
  std::size_t dimension() const noexcept { return dim_; }
  Smoothness smoothness() const noexcept { return s_; }

 private:
  std::size_t dim_;
  Smoothness s_;
  Fn fn_;
};

static_assert(FirstOrderOracle<NonsmoothOracle>);
static_assert(FirstOrderOracle<SmoothOracle>);
static_assert(FirstOrderOracle<LinsysOracle>);
static_assert(FirstOrderOracle<FunctionOracle>);

}  // namespace lmifeas

#endif  // LMIFEAS_OBJECTIVES_HPP
